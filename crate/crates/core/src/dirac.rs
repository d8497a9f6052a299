//! Skew bundle maps `π: 𝔍E → 𝔇E`, the π-bracket, integrability of their
//! graphs, and reduction of a Dirac graph to structure data on `E`.
//!
//! A graph `L_π = {(π(μ), μ)}` is Dirac iff `π` is skew with respect to the
//! `E`-pairing and `π⟦μ,ν⟧_π = [π(μ), π(ν)]_𝔇`. Three encodings are
//! supported:
//!
//! * [`PiMap::Trivial`]: `π(𝔶, v) = (Ω(v) − 𝔶∘θ, θ(v))`. Every skew map on a
//!   bundle of rank at least two has this form.
//! * [`PiMap::Line`]: rank one, `π(ξ, u) = (−⟨ξ, Y⟩, uY + Λ♯ξ)`, which is
//!   the general skew map on `M × ℝ`.
//! * [`PiMap::Frame`]: an arbitrary matrix between the frames of `𝔍E` and
//!   `𝔇E`, for raw input. [`PiMap::canonical`] recovers one of the other two
//!   encodings when the matrix is skew.

use crate::algebroid::AlgebroidData;
use crate::bundle::{DerivationDE, JetSection, SectionE, VectorField};
use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiData};
use crate::omni::OmniSection;
use crate::poly::{Poly, PolyMatrix};
use crate::report::{Check, CheckSet};
use crate::sample::{monomials_up_to, Sampler};
use crate::tensor::StructureTensor;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiMap {
    Trivial {
        /// `θ: E → TM`, `n × k`.
        theta: PolyMatrix,
        omega: StructureTensor,
    },
    Line {
        /// Antisymmetric `n × n` bivector.
        lambda: PolyMatrix,
        y: VectorField,
    },
    Frame {
        /// `(k² + n) × (kn + k)` matrix from the `𝔍E` frame to the `𝔇E` frame.
        matrix: PolyMatrix,
        rank: usize,
    },
}

impl PiMap {
    pub fn trivial(theta: PolyMatrix, omega: StructureTensor) -> Result<Self> {
        if theta.rows() != theta.nvars() || theta.cols() != omega.rank() || theta.nvars() != omega.nvars() {
            return Err(Error::shape(
                "theta",
                format!("{}x{}", theta.nvars(), omega.rank()),
                format!("{:?}", theta.shape()),
            ));
        }
        omega.check_antisymmetric()?;
        Ok(PiMap::Trivial { theta, omega })
    }

    pub fn line(lambda: PolyMatrix, y: VectorField) -> Result<Self> {
        let n = y.dim();
        if lambda.shape() != (n, n) || lambda.nvars() != n {
            return Err(Error::shape("lambda", format!("{n}x{n}"), format!("{:?}", lambda.shape())));
        }
        check_bivector(&lambda)?;
        Ok(PiMap::Line { lambda, y })
    }

    pub fn frame(matrix: PolyMatrix, rank: usize) -> Result<Self> {
        let n = matrix.nvars();
        if rank == 0 || matrix.shape() != (rank * rank + n, rank * n + rank) {
            return Err(Error::shape(
                "frame matrix",
                format!("{}x{}", rank * rank + n, rank * n + rank),
                format!("{:?}", matrix.shape()),
            ));
        }
        Ok(PiMap::Frame { matrix, rank })
    }

    /// The zero map.
    pub fn zero(nvars: usize, rank: usize) -> Self {
        PiMap::Trivial {
            theta: PolyMatrix::zeros(nvars, nvars, rank),
            omega: StructureTensor::zero(nvars, rank),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            PiMap::Trivial { theta, .. } => theta.nvars(),
            PiMap::Line { y, .. } => y.dim(),
            PiMap::Frame { matrix, .. } => matrix.nvars(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            PiMap::Trivial { omega, .. } => omega.rank(),
            PiMap::Line { .. } => 1,
            PiMap::Frame { rank, .. } => *rank,
        }
    }

    pub fn encoding(&self) -> &'static str {
        match self {
            PiMap::Trivial { .. } => "trivial",
            PiMap::Line { .. } => "line",
            PiMap::Frame { .. } => "frame",
        }
    }

    /// `π(μ)`. Panics on a patch or rank mismatch; see [`pi_apply`].
    pub fn apply(&self, mu: &JetSection) -> DerivationDE {
        match self {
            PiMap::Trivial { theta, omega } => {
                let endo = &omega.endo(&mu.val) - &(&mu.hom * theta);
                let base = VectorField::new(theta.mul_vec(mu.val.components()));
                DerivationDE { endo, base }
            }
            PiMap::Line { lambda, y } => {
                let n = y.dim();
                let xi = mu.hom.row(0);
                let u = mu.val.get(0);
                let endo = PolyMatrix::from_fn(n, 1, 1, |_, _| -y.contract(&xi));
                let sharp = lambda.transpose().mul_vec(&xi);
                let base = VectorField::new((0..n).map(|j| &(u * y.get(j)) + &sharp[j]).collect());
                DerivationDE { endo, base }
            }
            PiMap::Frame { matrix, rank } => {
                let coords = matrix.mul_vec(&mu.frame_coordinates());
                DerivationDE::from_frame_coordinates(matrix.nvars(), *rank, &coords)
            }
        }
    }

    /// The frame matrix of `π`, whatever its encoding.
    pub fn frame_matrix(&self) -> PolyMatrix {
        let (n, k) = (self.nvars(), self.rank());
        let columns: Vec<Vec<Poly>> = JetSection::frame(n, k)
            .iter()
            .map(|mu| self.apply(mu).frame_coordinates())
            .collect();
        PolyMatrix::from_fn(n, k * k + n, k * n + k, |r, c| columns[c][r].clone())
    }

    pub fn to_frame(&self) -> PiMap {
        PiMap::Frame {
            matrix: self.frame_matrix(),
            rank: self.rank(),
        }
    }

    /// Trivial (rank ≥ 2) or Line (rank 1) encoding of the same map, or
    /// `None` if the map is not of that form (in which case it is not skew).
    pub fn canonical(&self) -> Option<PiMap> {
        let (n, k) = (self.nvars(), self.rank());
        let candidate = match self {
            PiMap::Trivial { .. } | PiMap::Line { .. } => return Some(self.clone()),
            PiMap::Frame { .. } if k == 1 => {
                let y = self.apply(&JetSection::frame(n, 1)[n]).base;
                let frame = JetSection::frame(n, 1);
                let lambda = PolyMatrix::from_fn(n, n, n, |i, j| self.apply(&frame[i]).base.get(j).clone());
                if check_bivector(&lambda).is_err() {
                    return None;
                }
                PiMap::Line { lambda, y }
            }
            PiMap::Frame { .. } => {
                let values: Vec<DerivationDE> = (0..k)
                    .map(|a| self.apply(&JetSection::jet_lift(&SectionE::basis(n, k, a))))
                    .collect();
                let theta = PolyMatrix::from_fn(n, n, k, |i, a| values[a].base.get(i).clone());
                let omega = StructureTensor::from_entries(n, k, |c, a, b| values[a].endo.get(c, b).clone());
                if omega.check_antisymmetric().is_err() {
                    return None;
                }
                PiMap::Trivial { theta, omega }
            }
        };
        (candidate.frame_matrix() == self.frame_matrix()).then_some(candidate)
    }

    /// The graph section `(π(μ), μ)` of `ℰ`.
    pub fn graph(&self, mu: &JetSection) -> OmniSection {
        OmniSection {
            de: self.apply(mu),
            jet: mu.clone(),
        }
    }

    /// `⟦μ,ν⟧_π = 𝔏_{π(μ)}ν − 𝔏_{π(ν)}μ − 𝕕⟨π(μ), ν⟩_E`.
    pub fn bracket(&self, mu: &JetSection, nu: &JetSection) -> JetSection {
        let pm = self.apply(mu);
        let pn = self.apply(nu);
        &(&pm.lie_derivative(nu) - &pn.lie_derivative(mu)) - &JetSection::jet_lift(&nu.pairing(&pm))
    }

    /// `π⟦μ,ν⟧_π − [π(μ), π(ν)]_𝔇`.
    pub fn integrability_defect(&self, mu: &JetSection, nu: &JetSection) -> DerivationDE {
        &self.apply(&self.bracket(mu, nu)) - &self.apply(mu).bracket(&self.apply(nu))
    }
}

fn check_bivector(lambda: &PolyMatrix) -> Result<()> {
    for i in 0..lambda.rows() {
        for j in i..lambda.cols() {
            if !(lambda.get(i, j) + lambda.get(j, i)).is_zero() {
                return Err(Error::NotAntisymmetric {
                    what: "bivector",
                    detail: format!("entries ({}, {}) and ({}, {})", i + 1, j + 1, j + 1, i + 1),
                });
            }
        }
    }
    Ok(())
}

fn check_jet(pi: &PiMap, mu: &JetSection) -> Result<()> {
    if pi.nvars() != mu.nvars() {
        return Err(Error::PatchMismatch {
            left: pi.nvars(),
            right: mu.nvars(),
        });
    }
    if pi.rank() != mu.rank() {
        return Err(Error::shape("fiber rank", pi.rank(), mu.rank()));
    }
    Ok(())
}

pub fn pi_apply(pi: &PiMap, mu: &JetSection) -> Result<DerivationDE> {
    check_jet(pi, mu)?;
    Ok(pi.apply(mu))
}

pub fn pi_bracket(pi: &PiMap, mu: &JetSection, nu: &JetSection) -> Result<JetSection> {
    check_jet(pi, mu)?;
    check_jet(pi, nu)?;
    Ok(pi.bracket(mu, nu))
}

/// Human-readable name of the `p`-th element of the `𝔍E` frame.
pub fn frame_label(nvars: usize, rank: usize, p: usize) -> String {
    if p < rank * nvars {
        format!("dx{}⊗e{}", p % nvars + 1, p / nvars + 1)
    } else {
        format!("e{}", p - rank * nvars + 1)
    }
}

/// Skewness `⟨π(μ),ν⟩_E + ⟨π(ν),μ⟩_E = 0` on all pairs of `𝔍E` frame
/// elements, which suffices by `C∞(M)`-bilinearity.
pub fn check_skew(pi: &PiMap) -> Check {
    let (n, k) = (pi.nvars(), pi.rank());
    let frame = JetSection::frame(n, k);
    let images: Vec<DerivationDE> = frame.iter().map(|mu| pi.apply(mu)).collect();
    let mut check = Check::new("skew-symmetry", "pisharpDiraciff-1");
    for p in 0..frame.len() {
        for q in p..frame.len() {
            let defect = &frame[q].pairing(&images[p]) + &frame[p].pairing(&images[q]);
            if !check.observe(&defect, || {
                format!("jet frame pair ({}, {})", frame_label(n, k, p), frame_label(n, k, q))
            }) {
                return check;
            }
        }
    }
    check
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntegrabilityMode {
    /// Decision procedure on frame data (fadf1/fadf2, or the Jacobi
    /// conditions at rank one).
    #[default]
    Finite,
    /// `π⟦μ,ν⟧_π = [π(μ),π(ν)]_𝔇` evaluated on a generating family and
    /// random jets; a falsifier, not a proof.
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: IntegrabilityMode,
    pub degree_cap: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            mode: IntegrabilityMode::Finite,
            degree_cap: 2,
            samples: 16,
            seed: 0,
        }
    }
}

impl CheckOptions {
    pub fn with_mode(mut self, mode: IntegrabilityMode) -> Self {
        self.mode = mode;
        self
    }
}

/// The two frame conditions for a trivial-form map:
/// `θ∘Ω(v₁,v₂) = [θv₁, θv₂]` and
/// `Ω(v₁, Ω(v₂,v₃)) + L_{θ(v₁)}Ω(v₂,v₃) + c.p. = 0` on constant frame sections.
pub fn check_trivial_form(theta: &PolyMatrix, omega: &StructureTensor) -> CheckSet {
    let (n, k) = (omega.nvars(), omega.rank());
    let basis: Vec<SectionE> = (0..k).map(|a| SectionE::basis(n, k, a)).collect();
    let anchor = |s: &SectionE| VectorField::new(theta.mul_vec(s.components()));

    let mut fadf1 = Check::new("anchor-morphism", "fadf1");
    for a in 0..k {
        for b in 0..k {
            let lhs = anchor(&omega.apply(&basis[a], &basis[b]));
            let rhs = anchor(&basis[a]).bracket(&anchor(&basis[b]));
            fadf1.observe(&(&lhs - &rhs), || format!("pair ({}, {})", a + 1, b + 1));
        }
    }

    let mut fadf2 = Check::new("jacobi-frame", "fadf2");
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let term = |p: usize, q: usize, r: usize| {
                    let inner = omega.apply(&basis[q], &basis[r]);
                    &omega.apply(&basis[p], &inner) + &anchor(&basis[p]).apply_section(&inner)
                };
                let defect = &(&term(a, b, c) + &term(b, c, a)) + &term(c, a, b);
                fadf2.observe(&defect, || format!("triple ({}, {}, {})", a + 1, b + 1, c + 1));
            }
        }
    }
    [fadf1, fadf2].into_iter().collect()
}

/// `𝕕(xᵅ e_a)` for all monomials of degree at most `cap`.
pub fn generating_jets(nvars: usize, rank: usize, cap: u32) -> Vec<(String, JetSection)> {
    let names: Vec<String> = (1..=nvars).map(|i| format!("x{i}")).collect();
    let mut out = Vec::new();
    for m in monomials_up_to(nvars, cap) {
        let f = Poly::monomial(nvars, m, crate::poly::int(1));
        for a in 0..rank {
            let u = SectionE::basis(nvars, rank, a).scale(&f);
            out.push((format!("d({}*e{})", f.to_string_with(&names), a + 1), JetSection::jet_lift(&u)));
        }
    }
    out
}

fn sampled_integrability(pi: &PiMap, opts: &CheckOptions) -> Check {
    let (n, k) = (pi.nvars(), pi.rank());
    let mut check = Check::new("pi-equation", "piEquation");
    let gens = generating_jets(n, k, opts.degree_cap);
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let defect = pi.integrability_defect(&gens[i].1, &gens[j].1);
            check.observe(&defect, || format!("({}, {})", gens[i].0, gens[j].0));
        }
    }
    let mut sampler = Sampler::new(opts.seed);
    for s in 0..opts.samples {
        let mu = sampler.scaled_jet_lift(n, k, opts.degree_cap);
        let nu = sampler.scaled_jet_lift(n, k, opts.degree_cap);
        check.observe(&pi.integrability_defect(&mu, &nu), || {
            format!("random f*d(u) pair #{} (seed {})", s + 1, opts.seed)
        });
        let mu = sampler.jet(n, k, opts.degree_cap);
        let nu = sampler.jet(n, k, opts.degree_cap);
        check.observe(&pi.integrability_defect(&mu, &nu), || {
            format!("random jet pair #{} (seed {})", s + 1, opts.seed)
        });
    }
    check
}

/// Integrability of the graph of a skew `π`.
///
/// Fails with [`Error::Structural`] if `π` is not skew (the graph is then not
/// isotropic and the Dirac question is undefined).
pub fn check_integrability(pi: &PiMap, opts: &CheckOptions) -> Result<CheckSet> {
    let skew = check_skew(pi);
    if !skew.pass {
        let at = skew.witness.map(|w| w.sections).unwrap_or_default();
        return Err(Error::Structural(format!("pi is not skew-symmetric at {at}")));
    }
    match opts.mode {
        IntegrabilityMode::Sampled => Ok([sampled_integrability(pi, opts)].into_iter().collect()),
        IntegrabilityMode::Finite => match pi.canonical() {
            Some(PiMap::Trivial { theta, omega }) => Ok(check_trivial_form(&theta, &omega)),
            Some(PiMap::Line { lambda, y }) => {
                let data = JacobiData::new(lambda, y)?;
                Ok(jacobi::jacobi_conditions(&data))
            }
            _ => Err(Error::Structural("skew map without a trivial or line normal form".into())),
        },
    }
}

/// True iff `π` is skew and its graph is integrable in the chosen mode.
pub fn is_dirac(pi: &PiMap, opts: &CheckOptions) -> bool {
    check_integrability(pi, opts).map(|c| c.all_pass()).unwrap_or(false)
}

/// The four conditions whose equivalence characterizes when the jet
/// algebroid of a Dirac graph descends to a Lie algebroid on `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourConditions {
    pub checks: CheckSet,
}

impl FourConditions {
    pub const NAMES: [&'static str; 4] = [
        "anchor-is-bundle-map",
        "hom-anchor-vanishes",
        "hom-is-ideal",
        "quotient-algebroid",
    ];

    pub fn values(&self) -> [bool; 4] {
        Self::NAMES.map(|name| self.checks.passed(name).unwrap_or(false))
    }

    pub fn all(&self) -> bool {
        self.values().iter().all(|&b| b)
    }

    pub fn agree(&self) -> bool {
        let v = self.values();
        v.iter().all(|&b| b == v[0])
    }
}

/// `α∘π∘𝕕(u)`.
pub fn anchor_like(pi: &PiMap, u: &SectionE) -> VectorField {
    pi.apply(&JetSection::jet_lift(u)).base
}

pub fn four_conditions(pi: &PiMap, opts: &CheckOptions) -> FourConditions {
    let (n, k) = (pi.nvars(), pi.rank());
    let cap = opts.degree_cap;
    let mut sampler = Sampler::new(opts.seed);
    let mut functions: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    functions.extend((0..opts.samples).map(|_| sampler.monomial(n, cap)));
    let mut sections: Vec<SectionE> = (0..k).map(|a| SectionE::basis(n, k, a)).collect();
    sections.extend((0..opts.samples).map(|_| sampler.section(n, k, cap)));

    let mut c1 = Check::new(FourConditions::NAMES[0], "fourequivalentstatements-1");
    for (fi, f) in functions.iter().enumerate() {
        for (ui, u) in sections.iter().enumerate() {
            let defect = &anchor_like(pi, &u.scale(f)) - &anchor_like(pi, u).scale(f);
            c1.observe(&defect, || format!("function #{} and section #{}", fi + 1, ui + 1));
        }
    }

    let mut c2 = Check::new(FourConditions::NAMES[1], "eq22");
    for (p, y) in JetSection::frame(n, k).iter().enumerate().take(k * n) {
        c2.observe(&pi.apply(y).base, || frame_label(n, k, p));
    }

    let mut c3 = Check::new(FourConditions::NAMES[2], "fourequivalentstatements-3");
    let mut probes: Vec<(String, JetSection)> = generating_jets(n, k, cap.min(1));
    for s in 0..opts.samples {
        probes.push((format!("random jet #{}", s + 1), sampler.jet(n, k, cap)));
    }
    for (p, y) in JetSection::frame(n, k).iter().enumerate().take(k * n) {
        for (label, mu) in &probes {
            let defect = pi.bracket(y, mu).val;
            c3.observe(&defect, || format!("({}, {label})", frame_label(n, k, p)));
        }
    }

    let mut c4 = Check::new(FourConditions::NAMES[3], "uvE");
    let rho: Vec<VectorField> = (0..k).map(|a| anchor_like(pi, &SectionE::basis(n, k, a))).collect();
    let bundle_anchor = |u: &SectionE| {
        let mut acc = VectorField::zero(n);
        for (a, r) in rho.iter().enumerate() {
            acc = &acc + &r.scale(u.get(a));
        }
        acc
    };
    let bracket = |u: &SectionE, v: &SectionE| pi.bracket(&JetSection::jet_lift(u), &JetSection::jet_lift(v)).val;
    for (ui, u) in sections.iter().enumerate() {
        for (vi, v) in sections.iter().enumerate().take(k + 2) {
            let direct = pi.apply(&JetSection::jet_lift(u)).apply(v);
            c4.observe(&(&bracket(u, v) - &direct), || {
                format!("p⟦du,dv⟧ vs π(du)v, sections #{} #{}", ui + 1, vi + 1)
            });
            for (fi, f) in functions.iter().enumerate().take(n + 2) {
                let lhs = bracket(u, &v.scale(f));
                let rhs = &bracket(u, v).scale(f) + &v.scale(&bundle_anchor(u).apply(f));
                c4.observe(&(&lhs - &rhs), || {
                    format!("anchor rule, sections #{} #{}, function #{}", ui + 1, vi + 1, fi + 1)
                });
            }
        }
    }

    FourConditions {
        checks: [c1, c2, c3, c4].into_iter().collect(),
    }
}

/// Reduces a Dirac graph to a Lie algebroid on `E`:
/// `cᶜₐᵦ = (π(𝕕e_a) e_b)_c` and `ρ(e_a) = α∘π(𝕕e_a)`.
pub fn dirac_to_algebroid(pi: &PiMap, opts: &CheckOptions) -> Result<AlgebroidData> {
    let integrability = check_integrability(pi, &opts.with_mode(IntegrabilityMode::Finite))?;
    if let Some(failed) = integrability.first_failure() {
        let at = failed.witness.as_ref().map(|w| w.sections.clone()).unwrap_or_default();
        return Err(Error::Structural(format!(
            "graph is not a Dirac structure: {} ({}) fails at {at}",
            failed.name, failed.tag
        )));
    }
    let four = four_conditions(pi, opts);
    if !four.all() {
        let failed: Vec<&str> = FourConditions::NAMES
            .iter()
            .zip(four.values())
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| *name)
            .collect();
        return Err(Error::LocalLieOnly(format!("conditions failing: {}", failed.join(", "))));
    }
    let (n, k) = (pi.nvars(), pi.rank());
    let images: Vec<DerivationDE> = (0..k)
        .map(|a| pi.apply(&JetSection::jet_lift(&SectionE::basis(n, k, a))))
        .collect();
    let c = StructureTensor::from_entries(n, k, |c, a, b| {
        images[a].apply(&SectionE::basis(n, k, b)).get(c).clone()
    });
    let rho = PolyMatrix::from_fn(n, n, k, |i, a| images[a].base.get(i).clone());
    AlgebroidData::new(rho, c)
}
