//! Lie algebroids on a trivialized bundle `E = M × ℝᵏ`.
//!
//! [`AlgebroidData`] holds the anchor matrix and the frame structure
//! functions; the bracket of arbitrary sections follows from the anchor
//! rule. This module also builds the Dirac graph of an algebroid, the lift
//! `ρ̂: 𝔍E → 𝔇(TM)` of its anchor, Nijenhuis deformations, and the tangent
//! and Poisson-cotangent examples.

use crate::bundle::{DerivationDE, JetSection, SectionE, VectorField};
use crate::dirac::{self, CheckOptions, IntegrabilityMode, PiMap};
use crate::error::{Error, Result};
use crate::jacobi::{schouten, Multivector};
use crate::poly::{rational_determinant, Poly, PolyMatrix, Rational};
use crate::report::{Check, CheckSet};
use crate::sample::Sampler;
use crate::tensor::StructureTensor;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebroidData {
    /// `ρ(e_a) = Σᵢ rho[i][a] ∂ᵢ`, an `n × k` matrix.
    pub rho: PolyMatrix,
    pub c: StructureTensor,
}

impl AlgebroidData {
    pub fn new(rho: PolyMatrix, c: StructureTensor) -> Result<Self> {
        let n = c.nvars();
        if rho.nvars() != n {
            return Err(Error::PatchMismatch {
                left: rho.nvars(),
                right: n,
            });
        }
        if rho.shape() != (n, c.rank()) {
            return Err(Error::shape("anchor", format!("{n}x{}", c.rank()), format!("{:?}", rho.shape())));
        }
        c.check_antisymmetric()?;
        Ok(AlgebroidData { rho, c })
    }

    pub fn abelian(nvars: usize, rank: usize) -> Self {
        AlgebroidData {
            rho: PolyMatrix::zeros(nvars, nvars, rank),
            c: StructureTensor::zero(nvars, rank),
        }
    }

    pub fn nvars(&self) -> usize {
        self.c.nvars()
    }

    pub fn rank(&self) -> usize {
        self.c.rank()
    }

    pub fn anchor_of(&self, u: &SectionE) -> VectorField {
        VectorField::new(self.rho.mul_vec(u.components()))
    }

    /// `[u,v]ᶜ = Σ uₐvᵦcᶜₐᵦ + ρ(u)(vᶜ) − ρ(v)(uᶜ)`.
    pub fn bracket(&self, u: &SectionE, v: &SectionE) -> SectionE {
        &(&self.c.apply(u, v) + &self.anchor_of(u).apply_section(v)) - &self.anchor_of(v).apply_section(u)
    }

    fn basis(&self) -> Vec<SectionE> {
        (0..self.rank()).map(|a| SectionE::basis(self.nvars(), self.rank(), a)).collect()
    }

    /// The trivial-form map `θ = ρ`, `Ω = c`, built without checking axioms.
    pub fn pi_map(&self) -> PiMap {
        PiMap::Trivial {
            theta: self.rho.clone(),
            omega: self.c.clone(),
        }
    }
}

fn check_section(a: &AlgebroidData, u: &SectionE) -> Result<()> {
    if u.nvars() != a.nvars() {
        return Err(Error::PatchMismatch {
            left: a.nvars(),
            right: u.nvars(),
        });
    }
    if u.rank() != a.rank() {
        return Err(Error::shape("section rank", a.rank(), u.rank()));
    }
    Ok(())
}

pub fn bracket_sections(a: &AlgebroidData, u: &SectionE, v: &SectionE) -> Result<SectionE> {
    check_section(a, u)?;
    check_section(a, v)?;
    Ok(a.bracket(u, v))
}

fn jacobiator(a: &AlgebroidData, u: &SectionE, v: &SectionE, w: &SectionE) -> SectionE {
    &(&a.bracket(u, &a.bracket(v, w)) + &a.bracket(v, &a.bracket(w, u))) + &a.bracket(w, &a.bracket(u, v))
}

/// Anchor homomorphism and Jacobi identity on the frame, plus Jacobi on
/// random non-constant sections.
pub fn check_axioms_with(a: &AlgebroidData, samples: usize, seed: u64, cap: u32) -> CheckSet {
    let (n, k) = (a.nvars(), a.rank());
    let basis = a.basis();

    let mut hom = Check::new("anchor-homomorphism", "fadf1");
    for p in 0..k {
        for q in p + 1..k {
            let defect = &a.anchor_of(&a.bracket(&basis[p], &basis[q]))
                - &a.anchor_of(&basis[p]).bracket(&a.anchor_of(&basis[q]));
            hom.observe(&defect, || format!("pair ({}, {})", p + 1, q + 1));
        }
    }

    let mut frame = Check::new("jacobi-basis", "fadf2");
    for p in 0..k {
        for q in 0..k {
            for r in 0..k {
                let defect = jacobiator(a, &basis[p], &basis[q], &basis[r]);
                frame.observe(&defect, || format!("triple ({}, {}, {})", p + 1, q + 1, r + 1));
            }
        }
    }

    let mut random = Check::new("jacobi-random", "anchor");
    let mut sampler = Sampler::new(seed);
    for s in 0..samples {
        let (u, v, w) = (sampler.section(n, k, cap), sampler.section(n, k, cap), sampler.section(n, k, cap));
        random.observe(&jacobiator(a, &u, &v, &w), || format!("random triple #{} (seed {seed})", s + 1));
    }
    [hom, frame, random].into_iter().collect()
}

pub fn check_axioms(a: &AlgebroidData) -> CheckSet {
    check_axioms_with(a, 4, 0, 1)
}

/// `π(𝕕u) = [u, ·]`, as a trivial-form map.
pub fn algebroid_to_pi(a: &AlgebroidData) -> Result<PiMap> {
    let checks = check_axioms(a);
    if let Some(failed) = checks.first_failure() {
        let at = failed.witness.as_ref().map(|w| w.sections.clone()).unwrap_or_default();
        return Err(Error::NotAlgebroid(format!("{} fails at {at}", failed.name)));
    }
    Ok(a.pi_map())
}

/// Random sections, one-forms and jets for the identities below.
struct Samples {
    sections: Vec<SectionE>,
    forms: Vec<Vec<Poly>>,
    jets: Vec<JetSection>,
}

fn draw(a: &AlgebroidData, count: usize, seed: u64, cap: u32) -> Samples {
    let (n, k) = (a.nvars(), a.rank());
    let mut sampler = Sampler::new(seed);
    let mut sections: Vec<SectionE> = a.basis();
    sections.extend((0..count).map(|_| sampler.section(n, k, cap)));
    let mut forms: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| Poly::integer(n, (i == j) as i64)).collect())
        .collect();
    forms.extend((0..count).map(|_| (0..n).map(|_| sampler.poly(n, cap)).collect()));
    let mut jets: Vec<JetSection> = JetSection::frame(n, k);
    jets.extend((0..count).map(|_| sampler.jet(n, k, cap)));
    Samples { sections, forms, jets }
}

/// `(L_X ω)_j = X(ω_j) + Σᵢ ωᵢ ∂ⱼXⁱ`.
pub fn lie_derivative_form(x: &VectorField, omega: &[Poly]) -> Vec<Poly> {
    let n = x.dim();
    (0..n)
        .map(|j| {
            let mut acc = x.apply(&omega[j]);
            for (i, w) in omega.iter().enumerate() {
                acc += &(w * &x.get(i).diff(j));
            }
            acc
        })
        .collect()
}

/// The three π-bracket formulas on jet lifts and decomposable
/// `Hom(TM, E)` elements.
pub fn check_pi_bracket_props(a: &AlgebroidData, pi: &PiMap, count: usize, seed: u64, cap: u32) -> CheckSet {
    let s = draw(a, count, seed, cap);
    let lift = JetSection::jet_lift;
    let pairs = s.sections.len().min(s.forms.len());

    let mut item1 = Check::new("pi-bracket-jet-lifts", "pibracket-1");
    let mut item2 = Check::new("pi-bracket-mixed", "pibracket-2");
    let mut item3 = Check::new("pi-bracket-hom", "pibracket-3");
    for p in 0..pairs {
        let q = (p + 1) % pairs;
        let (u1, u2) = (&s.sections[p], &s.sections[q]);
        let (w1, w2) = (&s.forms[p], &s.forms[q]);

        let defect = &pi.bracket(&lift(u1), &lift(u2)) - &lift(&a.bracket(u1, u2));
        item1.observe(&defect, || format!("sections #{} #{}", p + 1, q + 1));

        let rhs = &JetSection::tensor(&lie_derivative_form(&a.anchor_of(u1), w1), u2)
            + &JetSection::tensor(w1, &a.bracket(u1, u2));
        let defect = &pi.bracket(&lift(u1), &JetSection::tensor(w1, u2)) - &rhs;
        item2.observe(&defect, || format!("section #{}, form #{}, section #{}", p + 1, p + 1, q + 1));

        let rhs = &JetSection::tensor(w1, u2).scale(&a.anchor_of(u1).contract(w2))
            - &JetSection::tensor(w2, u1).scale(&a.anchor_of(u2).contract(w1));
        let defect = &pi.bracket(&JetSection::tensor(w1, u1), &JetSection::tensor(w2, u2)) - &rhs;
        item3.observe(&defect, || format!("forms #{} #{}, sections #{} #{}", p + 1, q + 1, p + 1, q + 1));
    }
    [item1, item2, item3].into_iter().collect()
}

/// `ρ̂(𝔶, u) = (−Σₐ(∂ⱼρ_{ia})uₐ − ρ∘𝔶, ρ(u))`, a derivation of `TM`.
///
/// On jet lifts this is `Y ↦ [ρ(u), Y]`; on `Hom(TM, E)` it is `−1⊗ρ`.
pub fn rho_hat(a: &AlgebroidData, mu: &JetSection) -> DerivationDE {
    let n = a.nvars();
    let mut endo = (&a.rho * &mu.hom).scale(&Poly::integer(n, -1));
    for j in 0..n {
        let drho = a.rho.diff(j).mul_vec(mu.val.components());
        for (i, p) in drho.iter().enumerate() {
            let entry = endo.get(i, j) - p;
            endo.set(i, j, entry);
        }
    }
    DerivationDE {
        endo,
        base: a.anchor_of(&mu.val),
    }
}

/// `[ρ(u), ·]` as a derivation of `TM`, read off its action on `∂ⱼ`.
fn bracket_derivation(x: &VectorField) -> DerivationDE {
    let n = x.dim();
    let cols: Vec<VectorField> = (0..n).map(|j| x.bracket(&VectorField::coordinate(n, j))).collect();
    DerivationDE {
        endo: PolyMatrix::from_fn(n, n, n, |i, j| cols[j].get(i).clone()),
        base: x.clone(),
    }
}

/// Commutativity of the jet diagram and the morphism property of `π` and
/// `ρ̂`, on frames and samples.
pub fn check_diagram(a: &AlgebroidData, count: usize, seed: u64, cap: u32) -> CheckSet {
    let (n, k) = (a.nvars(), a.rank());
    let pi = a.pi_map();
    let s = draw(a, count, seed, cap);

    let mut pi_hom = Check::new("pi-hom-column", "jetEdiagram-left-pi");
    let mut rho_hom = Check::new("rho-hat-hom-column", "jetEdiagram-left-rho");
    for (p, y) in JetSection::frame(n, k).iter().enumerate().take(k * n) {
        let label = || dirac::frame_label(n, k, p);
        let expected = DerivationDE::from_endo((&y.hom * &a.rho).scale(&Poly::integer(n, -1)));
        pi_hom.observe(&(&pi.apply(y) - &expected), label);
        // dxⱼ⊗e_a = 𝕕(xⱼe_a) − xⱼ𝕕e_a, with ρ̂ on jet lifts given by [ρ(·), ·].
        let (j, ea) = (p % n, SectionE::basis(n, k, p / n));
        let xj = Poly::var(n, j);
        let via_lifts =
            &bracket_derivation(&a.anchor_of(&ea.scale(&xj))) - &bracket_derivation(&a.anchor_of(&ea)).scale(&xj);
        let expected = DerivationDE::from_endo((&a.rho * &y.hom).scale(&Poly::integer(n, -1)));
        rho_hom.observe(&(&via_lifts - &expected), label);
        rho_hom.observe(&(&rho_hat(a, y) - &expected), label);
    }

    let mut right = Check::new("anchor-column", "jetEdiagram-right");
    let mut lifts = Check::new("rho-hat-on-jet-lifts", "rhohat");
    for (idx, u) in s.sections.iter().enumerate() {
        lifts.observe(&(&rho_hat(a, &JetSection::jet_lift(u)) - &bracket_derivation(&a.anchor_of(u))), || {
            format!("section #{}", idx + 1)
        });
    }
    for (idx, mu) in s.jets.iter().enumerate() {
        let rho_p = a.anchor_of(&mu.val);
        right.observe(&(&pi.apply(mu).base - &rho_p), || format!("alpha∘pi, jet #{}", idx + 1));
        right.observe(&(&rho_hat(a, mu).base - &rho_p), || format!("alpha∘rho_hat, jet #{}", idx + 1));
    }

    let mut pi_morph = Check::new("pi-morphism", "piEquation");
    let mut rho_morph = Check::new("rho-hat-morphism", "jetEdiagram");
    for p in 0..s.jets.len() {
        let q = (p * 7 + 3) % s.jets.len();
        let (mu, nu) = (&s.jets[p], &s.jets[q]);
        let bracket = pi.bracket(mu, nu);
        pi_morph.observe(&(&pi.apply(&bracket) - &pi.apply(mu).bracket(&pi.apply(nu))), || {
            format!("jets #{} #{}", p + 1, q + 1)
        });
        rho_morph.observe(&(&rho_hat(a, &bracket) - &rho_hat(a, mu).bracket(&rho_hat(a, nu))), || {
            format!("jets #{} #{}", p + 1, q + 1)
        });
    }
    [pi_hom, rho_hom, right, lifts, pi_morph, rho_morph].into_iter().collect()
}

/// The adjoint action of `𝔍E` on its ideal `Hom(TM, E)` against the tensor
/// action of `ρ̂` (dualized to `T*M`) and `π`.
pub fn check_rep_equivalence(a: &AlgebroidData, count: usize, seed: u64, cap: u32) -> CheckSet {
    let pi = a.pi_map();
    let s = draw(a, count, seed, cap);
    let mut ideal = Check::new("hom-ideal", "fourequivalentstatements-3");
    let mut equiv = Check::new("representation-equivalence", "pr");
    for (p, mu) in s.jets.iter().enumerate() {
        let q = p % s.forms.len();
        let r = (p + 1) % s.sections.len();
        let (omega, u) = (&s.forms[q], &s.sections[r]);
        let adjoint = pi.bracket(mu, &JetSection::tensor(omega, u));
        ideal.observe(&adjoint.val, || format!("jet #{}, form #{}, section #{}", p + 1, q + 1, r + 1));

        let dual = rho_hat(a, mu).dual();
        let acted = dual.apply(&SectionE::new(omega.clone()));
        let tensor = &JetSection::tensor(acted.components(), u) + &JetSection::tensor(omega, &pi.apply(mu).apply(u));
        equiv.observe(&(&adjoint.hom - &tensor.hom), || {
            format!("jet #{}, form #{}, section #{}", p + 1, q + 1, r + 1)
        });
    }
    [ideal, equiv].into_iter().collect()
}

/// A bundle endomorphism `N` of `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NijenhuisOp {
    pub n_matrix: PolyMatrix,
}

impl NijenhuisOp {
    pub fn new(n_matrix: PolyMatrix) -> Result<Self> {
        if n_matrix.rows() != n_matrix.cols() {
            return Err(Error::shape("N", "square", format!("{:?}", n_matrix.shape())));
        }
        Ok(NijenhuisOp { n_matrix })
    }

    pub fn apply(&self, u: &SectionE) -> SectionE {
        SectionE::new(self.n_matrix.mul_vec(u.components()))
    }

    /// `[u,v]^N = [Nu,v] + [u,Nv] − N[u,v]`.
    pub fn deformed_bracket(&self, a: &AlgebroidData, u: &SectionE, v: &SectionE) -> SectionE {
        &(&a.bracket(&self.apply(u), v) + &a.bracket(u, &self.apply(v))) - &self.apply(&a.bracket(u, v))
    }

    /// `T^N(u,v) = N[u,v]^N − [Nu,Nv]`.
    pub fn torsion(&self, a: &AlgebroidData, u: &SectionE, v: &SectionE) -> SectionE {
        &self.apply(&self.deformed_bracket(a, u, v)) - &a.bracket(&self.apply(u), &self.apply(v))
    }

    /// `N̂(𝔶, u) = (N𝔶 + (dN)u, Nu)`, the lift with `N̂(𝕕u) = 𝕕(Nu)`.
    pub fn lift(&self, mu: &JetSection) -> JetSection {
        let n = mu.nvars();
        let mut hom = &self.n_matrix * &mu.hom;
        for j in 0..n {
            let col = self.n_matrix.diff(j).mul_vec(mu.val.components());
            for (a, p) in col.iter().enumerate() {
                let entry = hom.get(a, j) + p;
                hom.set(a, j, entry);
            }
        }
        JetSection {
            hom,
            val: self.apply(&mu.val),
        }
    }

    /// `π∘N̂ − ad_N∘π` with `ad_N(𝔡) = [N, 𝔡]_𝔇`, as a frame matrix.
    pub fn twisted_pi(&self, pi: &PiMap) -> PiMap {
        let (n, k) = (pi.nvars(), pi.rank());
        let nd = DerivationDE::from_endo(self.n_matrix.clone());
        let columns: Vec<Vec<Poly>> = JetSection::frame(n, k)
            .iter()
            .map(|mu| (&pi.apply(&self.lift(mu)) - &nd.bracket(&pi.apply(mu))).frame_coordinates())
            .collect();
        PiMap::Frame {
            matrix: PolyMatrix::from_fn(n, k * k + n, k * n + k, |r, c| columns[c][r].clone()),
            rank: k,
        }
    }

    /// `(E, [·,·]^N, ρ∘N)`, whose structure functions may fail antisymmetry
    /// only if `N` is not `C∞`-linear, which cannot happen here.
    pub fn deformed_algebroid(&self, a: &AlgebroidData) -> AlgebroidData {
        let (n, k) = (a.nvars(), a.rank());
        let basis = a.basis();
        AlgebroidData {
            rho: &a.rho * &self.n_matrix,
            c: StructureTensor::from_entries(n, k, |c, p, q| {
                self.deformed_bracket(a, &basis[p], &basis[q]).get(c).clone()
            }),
        }
    }
}

/// The three conditions of the Nijenhuis example, evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NijenhuisReport {
    pub twisted_dirac: bool,
    pub deformed_algebroid: bool,
    pub cyclic_identity: bool,
    pub torsion_zero: bool,
    pub checks: CheckSet,
}

impl NijenhuisReport {
    pub fn agree(&self) -> bool {
        self.twisted_dirac == self.deformed_algebroid && self.deformed_algebroid == self.cyclic_identity
    }
}

pub fn nijenhuis_suite(a: &AlgebroidData, nop: &NijenhuisOp, count: usize, seed: u64, cap: u32) -> NijenhuisReport {
    let (n, k) = (a.nvars(), a.rank());
    let pi = a.pi_map();
    let twisted = nop.twisted_pi(&pi);

    let mut lift = Check::new("twisted-pi-on-jet-lifts", "Nijenhuis-twist");
    let mut sampler = Sampler::new(seed);
    let mut sections = a.basis();
    sections.extend((0..count).map(|_| sampler.section(n, k, cap)));
    for (p, u) in sections.iter().enumerate() {
        let lifted = nop.lift(&JetSection::jet_lift(u));
        lift.observe(&(&lifted - &JetSection::jet_lift(&nop.apply(u))), || format!("N̂ on section #{}", p + 1));
        let v = &sections[(p + 1) % sections.len()];
        let d = twisted.apply(&JetSection::jet_lift(u));
        lift.observe(&(&d.apply(v) - &nop.deformed_bracket(a, u, v)), || {
            format!("sections #{} #{}", p + 1, (p + 1) % sections.len() + 1)
        });
    }

    let opts = CheckOptions {
        mode: IntegrabilityMode::Finite,
        degree_cap: cap,
        samples: count,
        seed,
    };
    let twisted_dirac = dirac::is_dirac(&twisted, &opts);
    let mut c1 = Check::new("twisted-graph-dirac", "Nijenhuis-1").with_status(twisted_dirac, || {
        "twisted map fails skewness or integrability".to_string()
    });
    c1.evaluated = 1;

    let deformed = nop.deformed_algebroid(a);
    let deformed_checks = check_axioms_with(&deformed, count.min(4), seed, cap.min(1));
    let deformed_algebroid = deformed.c.check_antisymmetric().is_ok() && deformed_checks.all_pass();
    let c2 = Check::new("deformed-algebroid", "Nijenhuis-2").with_status(deformed_algebroid, || {
        deformed_checks
            .first_failure()
            .map(|c| format!("{} at {}", c.name, c.witness.as_ref().map(|w| w.sections.as_str()).unwrap_or("")))
            .unwrap_or_default()
    });

    let mut c3 = Check::new("torsion-cyclic-identity", "Nijenhuis-3");
    let t = |u: &SectionE, v: &SectionE| nop.torsion(a, u, v);
    let cyclic = |u: &SectionE, v: &SectionE, w: &SectionE| {
        let term = |x: &SectionE, y: &SectionE, z: &SectionE| &a.bracket(&t(x, y), z) + &t(&a.bracket(x, y), z);
        &(&term(u, v, w) + &term(v, w, u)) + &term(w, u, v)
    };
    let basis = a.basis();
    for p in 0..k {
        for q in 0..k {
            for r in 0..k {
                c3.observe(&cyclic(&basis[p], &basis[q], &basis[r]), || {
                    format!("triple ({}, {}, {})", p + 1, q + 1, r + 1)
                });
            }
        }
    }
    for s in 0..count.min(4) {
        let (u, v, w) = (sampler.section(n, k, cap), sampler.section(n, k, cap), sampler.section(n, k, cap));
        c3.observe(&cyclic(&u, &v, &w), || format!("random triple #{}", s + 1));
    }
    let cyclic_identity = c3.pass;

    let mut torsion = Check::new("torsion-vanishes", "Nijenhuis");
    for p in 0..k {
        for q in p + 1..k {
            torsion.observe(&t(&basis[p], &basis[q]), || format!("pair ({}, {})", p + 1, q + 1));
        }
    }
    let torsion_zero = torsion.pass;

    let report_agree = twisted_dirac == deformed_algebroid && deformed_algebroid == cyclic_identity;
    let agree = Check::new("three-statements-agree", "Nijenhuis").with_status(report_agree, || {
        format!("dirac {twisted_dirac}, algebroid {deformed_algebroid}, cyclic {cyclic_identity}")
    });
    NijenhuisReport {
        twisted_dirac,
        deformed_algebroid,
        cyclic_identity,
        torsion_zero,
        checks: [lift, c1, c2, c3, torsion, agree].into_iter().collect(),
    }
}

/// `TM` with `ρ = id` and commuting coordinate frame.
pub fn tangent_algebroid(nvars: usize) -> AlgebroidData {
    AlgebroidData {
        rho: PolyMatrix::identity(nvars, nvars),
        c: StructureTensor::zero(nvars, nvars),
    }
}

/// `T*M` of a Poisson bivector: frame `dxᵢ`, `ρ(dxᵢ) = Σⱼ Πᵢⱼ∂ⱼ`,
/// `[dxᵢ, dxⱼ] = dΠᵢⱼ`.
pub fn poisson_cotangent(pi_bivector: &PolyMatrix) -> Result<AlgebroidData> {
    let n = pi_bivector.nvars();
    let mv = Multivector::from_bivector(pi_bivector)?;
    let square = schouten(&mv, &mv)?;
    if let Some((index, defect)) = square.first_nonzero() {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        return Err(Error::NotPoisson {
            index: index.iter().map(|i| i + 1).collect(),
            defect: defect.to_string_with(&names),
        });
    }
    Ok(AlgebroidData {
        rho: pi_bivector.transpose(),
        c: StructureTensor::from_entries(n, n, |k, i, j| pi_bivector.get(i, j).diff(k)),
    })
}

/// Frame matrix of `ρ̂: 𝔍E → 𝔇(TM)`, `(n² + n) × (kn + k)`.
pub fn rho_hat_frame_matrix(a: &AlgebroidData) -> PolyMatrix {
    let (n, k) = (a.nvars(), a.rank());
    let columns: Vec<Vec<Poly>> = JetSection::frame(n, k)
        .iter()
        .map(|mu| rho_hat(a, mu).frame_coordinates())
        .collect();
    PolyMatrix::from_fn(n, n * n + n, k * n + k, |r, c| columns[c][r].clone())
}

/// Determinant of the `ρ̂` frame matrix at a point (square only when
/// `rank = dim`).
pub fn rho_hat_determinant(a: &AlgebroidData, point: &[Rational]) -> Result<Rational> {
    let m = rho_hat_frame_matrix(a);
    if m.rows() != m.cols() {
        return Err(Error::shape("rho_hat frame matrix", "square", format!("{:?}", m.shape())));
    }
    Ok(rational_determinant(m.evaluate(point)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn so3(n: usize) -> StructureTensor {
        let e = |a| SectionE::basis(n, 3, a);
        StructureTensor::from_brackets(n, 3, |a, b| match (a, b) {
            (0, 1) => e(2),
            (1, 2) => e(0),
            _ => -&e(1),
        })
    }

    /// Rotation action of so(3) on ℝ³: `ρ(e_a) = Σ ε_{aij} x_j ∂_i`.
    fn so3_action() -> AlgebroidData {
        let n = 3;
        let x = |i| Poly::var(n, i);
        let rho = PolyMatrix::from_rows(
            n,
            vec![
                vec![Poly::zero(n), -x(2), x(1)],
                vec![x(2), Poly::zero(n), -x(0)],
                vec![-x(1), x(0), Poly::zero(n)],
            ],
        )
        .unwrap();
        AlgebroidData::new(rho, so3(n)).unwrap()
    }

    /// Brute-force Jacobi over all 27 basis triples on constant structure
    /// constants, written with explicit index sums.
    fn brute_force_jacobi(c: &StructureTensor) -> bool {
        let k = c.rank();
        for a in 0..k {
            for b in 0..k {
                for d in 0..k {
                    for out in 0..k {
                        let mut acc = Poly::zero(c.nvars());
                        for m in 0..k {
                            acc += &(c.get(m, b, d) * c.get(out, a, m));
                            acc += &(c.get(m, d, a) * c.get(out, b, m));
                            acc += &(c.get(m, a, b) * c.get(out, d, m));
                        }
                        if !acc.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn bracket_examples() {
        let a = AlgebroidData::abelian(2, 2);
        assert!(a.bracket(&SectionE::basis(2, 2, 0), &SectionE::basis(2, 2, 1)).is_zero());
        let s = AlgebroidData::new(PolyMatrix::zeros(0, 0, 3), so3(0)).unwrap();
        assert_eq!(s.bracket(&SectionE::basis(0, 3, 0), &SectionE::basis(0, 3, 1)), SectionE::basis(0, 3, 2));
        let act = so3_action();
        let mut sampler = Sampler::new(8);
        let (u, v, f) = (sampler.section(3, 3, 1), sampler.section(3, 3, 1), sampler.poly(3, 2));
        let lhs = act.bracket(&u, &v.scale(&f));
        let rhs = &act.bracket(&u, &v).scale(&f) + &v.scale(&act.anchor_of(&u).apply(&f));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn axioms_on_fixtures() {
        let s = AlgebroidData::new(PolyMatrix::zeros(0, 0, 3), so3(0)).unwrap();
        assert!(brute_force_jacobi(&s.c));
        assert!(check_axioms(&s).all_pass());
        assert!(check_axioms(&so3_action()).all_pass());
        assert!(check_axioms(&tangent_algebroid(2)).all_pass());

        let mut bad = s.clone();
        bad.c.set_pair(0, 1, &SectionE::new(vec![int(1), int(0), int(1)].into_iter().map(|c| Poly::constant(0, c)).collect()));
        assert!(!brute_force_jacobi(&bad.c));
        let checks = check_axioms(&bad);
        assert_eq!(checks.passed("jacobi-basis"), Some(false));
        assert!(algebroid_to_pi(&bad).is_err());
    }

    #[test]
    fn pi_acts_by_bracket_and_round_trips() {
        let a = so3_action();
        let pi = algebroid_to_pi(&a).unwrap();
        let mut sampler = Sampler::new(2);
        for _ in 0..4 {
            let (u, v) = (sampler.section(3, 3, 1), sampler.section(3, 3, 1));
            assert_eq!(pi.apply(&JetSection::jet_lift(&u)).apply(&v), a.bracket(&u, &v));
            // π(df⊗u) = [fu, ·] − f[u, ·].
            let f = sampler.poly(3, 1);
            let df: Vec<Poly> = (0..3).map(|i| f.diff(i)).collect();
            let lhs = pi.apply(&JetSection::tensor(&df, &u)).apply(&v);
            let rhs = &a.bracket(&u.scale(&f), &v) - &a.bracket(&u, &v).scale(&f);
            assert_eq!(lhs, rhs);
        }
        assert!(dirac::check_integrability(&pi, &CheckOptions::default()).unwrap().all_pass());
        assert_eq!(dirac::dirac_to_algebroid(&pi, &CheckOptions::default()).unwrap(), a);
    }

    #[test]
    fn pi_bracket_items() {
        let a = so3_action();
        assert!(check_pi_bracket_props(&a, &a.pi_map(), 3, 1, 1).all_pass());
        assert!(check_pi_bracket_props(&AlgebroidData::abelian(2, 2), &PiMap::zero(2, 2), 2, 1, 1).all_pass());
    }

    #[test]
    fn rho_hat_examples() {
        let t = tangent_algebroid(2);
        let m = rho_hat_frame_matrix(&t);
        let det = rational_determinant(m.evaluate(&[int(1), int(2)]).unwrap());
        assert_ne!(det, int(0));
        let a = so3_action();
        let mut s = Sampler::new(6);
        let u = s.section(3, 3, 2);
        assert_eq!(rho_hat(&a, &JetSection::jet_lift(&u)).base, a.anchor_of(&u));
        assert!(rho_hat(&AlgebroidData::abelian(2, 2), &s.jet(2, 2, 2)).is_zero());
    }

    #[test]
    fn diagram_and_representations() {
        let a = so3_action();
        assert!(check_diagram(&a, 2, 3, 1).all_pass());
        assert!(check_rep_equivalence(&a, 2, 3, 1).all_pass());
        let t = tangent_algebroid(2);
        assert!(check_rep_equivalence(&t, 3, 0, 2).all_pass());
    }

    #[test]
    fn nijenhuis_identity_and_zero() {
        let a = AlgebroidData::new(PolyMatrix::zeros(0, 0, 3), so3(0)).unwrap();
        for n_matrix in [PolyMatrix::identity(0, 3), PolyMatrix::zeros(0, 3, 3)] {
            let r = nijenhuis_suite(&a, &NijenhuisOp::new(n_matrix).unwrap(), 2, 0, 1);
            assert!(r.torsion_zero && r.twisted_dirac && r.deformed_algebroid && r.cyclic_identity);
            assert!(r.checks.all_pass());
        }
    }

    #[test]
    fn nijenhuis_diag_point_base() {
        let a = AlgebroidData::new(PolyMatrix::zeros(0, 0, 3), so3(0)).unwrap();
        let mut n_matrix = PolyMatrix::identity(0, 3);
        n_matrix.set(2, 2, Poly::zero(0));
        let r = nijenhuis_suite(&a, &NijenhuisOp::new(n_matrix.clone()).unwrap(), 2, 0, 1);
        let nop = NijenhuisOp::new(n_matrix).unwrap();
        assert!(brute_force_jacobi(&nop.deformed_algebroid(&a).c) == r.deformed_algebroid);
        assert!(r.agree());
    }

    #[test]
    fn poisson_examples() {
        assert_eq!(poisson_cotangent(&PolyMatrix::zeros(2, 2, 2)).unwrap(), AlgebroidData::abelian(2, 2));
        let mut plane = PolyMatrix::zeros(2, 2, 2);
        plane.set(0, 1, Poly::one(2));
        plane.set(1, 0, -Poly::one(2));
        let a = poisson_cotangent(&plane).unwrap();
        assert_eq!(a.anchor_of(&SectionE::basis(2, 2, 0)), VectorField::coordinate(2, 1));
        assert!(a.c.is_zero());
        assert!(check_axioms(&a).all_pass());
        let det = rho_hat_determinant(&a, &[int(3), int(-1)]).unwrap();
        assert!(det == int(1) || det == int(-1));

        let mut lin = PolyMatrix::zeros(2, 2, 2);
        lin.set(0, 1, Poly::var(2, 0));
        lin.set(1, 0, -Poly::var(2, 0));
        let a = poisson_cotangent(&lin).unwrap();
        assert_eq!(a.c.get(0, 0, 1), &Poly::one(2));
        assert!(check_axioms(&a).all_pass());

        let n = 3;
        let mut bad = PolyMatrix::zeros(n, n, n);
        bad.set(0, 1, Poly::var(n, 2));
        bad.set(1, 0, -Poly::var(n, 2));
        bad.set(1, 2, Poly::one(n));
        bad.set(2, 1, -Poly::one(n));
        bad.set(0, 2, Poly::var(n, 0));
        bad.set(2, 0, -Poly::var(n, 0));
        assert!(matches!(poisson_cotangent(&bad), Err(Error::NotPoisson { .. })));
    }
}
