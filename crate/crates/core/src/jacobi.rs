//! Jacobi structures on the trivial line bundle `M × ℝ`.
//!
//! A pair `(Λ, X)` with `[Λ,Λ] = 2X∧Λ` and `[Λ,X] = 0` makes
//! `[f,g] = Λ(df,dg) + fX(g) − gX(f)` a local Lie algebra on functions.
//! Schouten brackets are normalized so that `[Λ,Λ](df,dg,dh)` is twice the
//! Jacobiator of `{f,g} = Λ(df,dg)`.

use crate::bundle::{SectionE, VectorField};
use crate::dirac::{self, CheckOptions, IntegrabilityMode, PiMap};
use crate::error::{Error, Result};
use crate::poly::{int, Poly, PolyMatrix};
use crate::report::{Check, CheckSet, Defect};
use crate::sample::{monomials_up_to, Sampler};

/// A totally antisymmetric contravariant tensor of degree `p ≤ 3`, stored
/// as a dense `n^p` array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multivector {
    nvars: usize,
    degree: usize,
    coeffs: Vec<Poly>,
}

impl Multivector {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        Multivector {
            nvars,
            degree,
            coeffs: vec![Poly::zero(nvars); nvars.pow(degree as u32)],
        }
    }

    pub fn from_vector_field(x: &VectorField) -> Self {
        Multivector {
            nvars: x.dim(),
            degree: 1,
            coeffs: x.components().to_vec(),
        }
    }

    /// A bivector from its antisymmetric coefficient matrix.
    pub fn from_bivector(lambda: &PolyMatrix) -> Result<Self> {
        let n = lambda.nvars();
        if lambda.shape() != (n, n) {
            return Err(Error::shape("bivector", format!("{n}x{n}"), format!("{:?}", lambda.shape())));
        }
        let mv = Multivector::from_fn(n, 2, |ix| lambda.get(ix[0], ix[1]).clone());
        for i in 0..n {
            for j in i..n {
                let s = lambda.get(i, j) + lambda.get(j, i);
                if !s.is_zero() {
                    return Err(Error::NotAntisymmetric {
                        what: "bivector",
                        detail: format!("entry ({}, {}) plus its transpose is {s}", i + 1, j + 1),
                    });
                }
            }
        }
        Ok(mv)
    }

    fn from_fn(nvars: usize, degree: usize, mut f: impl FnMut(&[usize]) -> Poly) -> Self {
        let mut mv = Multivector::zero(nvars, degree);
        for flat in 0..mv.coeffs.len() {
            let ix = mv.unflatten(flat);
            mv.coeffs[flat] = f(&ix);
        }
        mv
    }

    fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut ix = vec![0; self.degree];
        for slot in ix.iter_mut().rev() {
            *slot = flat % self.nvars;
            flat /= self.nvars;
        }
        ix
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, ix: &[usize]) -> &Poly {
        assert_eq!(ix.len(), self.degree);
        let flat = ix.iter().fold(0, |acc, &i| acc * self.nvars + i);
        &self.coeffs[flat]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = int(c);
        Multivector {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|p| p.scale(&c)).collect(),
        }
    }

    pub fn sub(&self, other: &Multivector) -> Result<Self> {
        if (self.nvars, self.degree) != (other.nvars, other.degree) {
            return Err(Error::shape(
                "multivector",
                format!("degree {} in {} variables", self.degree, self.nvars),
                format!("degree {} in {} variables", other.degree, other.nvars),
            ));
        }
        Ok(Multivector {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// First nonzero component with strictly increasing indices.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Poly)> {
        (0..self.coeffs.len())
            .map(|flat| self.unflatten(flat))
            .filter(|ix| ix.windows(2).all(|w| w[0] < w[1]))
            .map(|ix| {
                let p = self.get(&ix).clone();
                (ix, p)
            })
            .find(|(_, p)| !p.is_zero())
    }
}

impl Defect for Multivector {
    fn nonzero_components(&self) -> Vec<(String, Poly)> {
        (0..self.coeffs.len())
            .map(|flat| self.unflatten(flat))
            .filter(|ix| ix.windows(2).all(|w| w[0] < w[1]))
            .filter(|ix| !self.get(ix).is_zero())
            .map(|ix| {
                let label = ix.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
                (format!("[{label}]"), self.get(&ix).clone())
            })
            .collect()
    }
}

/// Schouten–Nijenhuis bracket for degree pairs `(1,1)`, `(1,2)`, `(2,1)`,
/// `(2,2)`.
pub fn schouten(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    if a.nvars != b.nvars {
        return Err(Error::PatchMismatch {
            left: a.nvars,
            right: b.nvars,
        });
    }
    let n = a.nvars;
    let comp = |m: &Multivector| VectorField::new(m.coeffs.clone());
    match (a.degree, b.degree) {
        (1, 1) => Ok(Multivector::from_vector_field(&comp(a).bracket(&comp(b)))),
        (1, 2) => Ok(lie_derivative_bivector(&comp(a), b)),
        (2, 1) => Ok(lie_derivative_bivector(&comp(b), a).scale(-1)),
        (2, 2) => Ok(Multivector::from_fn(n, 3, |ix| {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            let term = |p: &Multivector, q: &Multivector, i: usize, j: usize, k: usize| {
                let mut acc = Poly::zero(n);
                for l in 0..n {
                    let c = p.get(&[l, i]);
                    if !c.is_zero() {
                        acc += &(c * &q.get(&[j, k]).diff(l));
                    }
                }
                acc
            };
            let mut acc = Poly::zero(n);
            for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                acc += &term(a, b, x, y, z);
                acc += &term(b, a, x, y, z);
            }
            acc
        })),
        (p, q) => Err(Error::UnsupportedDegree(p, q)),
    }
}

/// `(L_X Λ)ⁱʲ = Xᵏ∂ₖΛⁱʲ − Λᵏʲ∂ₖXⁱ − Λⁱᵏ∂ₖXʲ`.
fn lie_derivative_bivector(x: &VectorField, lambda: &Multivector) -> Multivector {
    let n = x.dim();
    Multivector::from_fn(n, 2, |ix| {
        let (i, j) = (ix[0], ix[1]);
        let mut acc = x.apply(lambda.get(&[i, j]));
        for k in 0..n {
            acc -= &(lambda.get(&[k, j]) * &x.get(i).diff(k));
            acc -= &(lambda.get(&[i, k]) * &x.get(j).diff(k));
        }
        acc
    })
}

/// Wedge product for degree pairs `(1,1)`, `(1,2)` and `(2,1)`.
pub fn wedge(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    if a.nvars != b.nvars {
        return Err(Error::PatchMismatch {
            left: a.nvars,
            right: b.nvars,
        });
    }
    let n = a.nvars;
    match (a.degree, b.degree) {
        (1, 1) => Ok(Multivector::from_fn(n, 2, |ix| {
            &(a.get(&ix[..1]) * b.get(&ix[1..])) - &(a.get(&ix[1..]) * b.get(&ix[..1]))
        })),
        (1, 2) => Ok(Multivector::from_fn(n, 3, |ix| {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            &(&(a.get(&[i]) * b.get(&[j, k])) + &(a.get(&[j]) * b.get(&[k, i]))) + &(a.get(&[k]) * b.get(&[i, j]))
        })),
        (2, 1) => wedge(b, a),
        (p, q) => Err(Error::UnsupportedDegree(p, q)),
    }
}

/// A bivector `Λ` and a vector field `X` on `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiData {
    pub lambda: PolyMatrix,
    pub x_field: VectorField,
}

impl JacobiData {
    pub fn new(lambda: PolyMatrix, x_field: VectorField) -> Result<Self> {
        if lambda.nvars() != x_field.dim() {
            return Err(Error::PatchMismatch {
                left: lambda.nvars(),
                right: x_field.dim(),
            });
        }
        Multivector::from_bivector(&lambda)?;
        Ok(JacobiData { lambda, x_field })
    }

    pub fn zero(nvars: usize) -> Self {
        JacobiData {
            lambda: PolyMatrix::zeros(nvars, nvars, nvars),
            x_field: VectorField::zero(nvars),
        }
    }

    pub fn nvars(&self) -> usize {
        self.x_field.dim()
    }

    fn bivector(&self) -> Multivector {
        Multivector::from_bivector(&self.lambda).expect("validated on construction")
    }

    /// `Λ(df, dg) = Σ Λⁱʲ ∂ᵢf ∂ⱼg`.
    pub fn lambda_pairing(&self, f: &Poly, g: &Poly) -> Poly {
        let n = self.nvars();
        let mut acc = Poly::zero(n);
        for i in 0..n {
            let fi = f.diff(i);
            if fi.is_zero() {
                continue;
            }
            for j in 0..n {
                let l = self.lambda.get(i, j);
                if !l.is_zero() {
                    acc += &(&(l * &fi) * &g.diff(j));
                }
            }
        }
        acc
    }

    /// `Λ♯(du) + uX`, the vector field through which `u` acts.
    pub fn anchor_like(&self, u: &Poly) -> VectorField {
        let n = self.nvars();
        let du: Vec<Poly> = (0..n).map(|i| u.diff(i)).collect();
        let sharp = self.lambda.transpose().mul_vec(&du);
        VectorField::new((0..n).map(|j| &sharp[j] + &(u * self.x_field.get(j))).collect())
    }

    /// `[f,g] = Λ(df,dg) + fX(g) − gX(f)`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let x = &self.x_field;
        &(&self.lambda_pairing(f, g) + &(f * &x.apply(g))) - &(g * &x.apply(f))
    }

    pub fn jacobiator(&self, f: &Poly, g: &Poly, h: &Poly) -> Poly {
        let b = |a: &Poly, c: &Poly| self.bracket(a, c);
        &(&b(&b(f, g), h) + &b(&b(g, h), f)) + &b(&b(h, f), g)
    }
}

pub fn jacobi_bracket(j: &JacobiData, f: &Poly, g: &Poly) -> Poly {
    j.bracket(f, g)
}

/// The two tensor conditions `[Λ,Λ] − 2X∧Λ = 0` and `[Λ,X] = 0`.
pub fn jacobi_conditions(j: &JacobiData) -> CheckSet {
    let lambda = j.bivector();
    let x = Multivector::from_vector_field(&j.x_field);
    let ll = schouten(&lambda, &lambda).expect("degrees (2,2)");
    let xl = wedge(&x, &lambda).expect("degrees (1,2)").scale(2);
    let lx = schouten(&lambda, &x).expect("degrees (2,1)");

    let mut c1 = Check::new("schouten-lambda-lambda", "LambdaLambda");
    c1.observe(&ll.sub(&xl).expect("same shape"), || "[Λ,Λ] − 2X∧Λ".to_string());
    let mut c2 = Check::new("schouten-lambda-x", "LambdaX");
    c2.observe(&lx, || "[Λ,X]".to_string());
    [c1, c2].into_iter().collect()
}

/// Jacobi identity of the bracket on all triples of monomials of degree at
/// most `cap` (including the constant 1).
pub fn check_bracket_jacobi(
    name: &str,
    cap: u32,
    nvars: usize,
    bracket: impl Fn(&Poly, &Poly) -> Poly,
) -> Check {
    let monos: Vec<Poly> = monomials_up_to(nvars, cap)
        .into_iter()
        .map(|m| Poly::monomial(nvars, m, int(1)))
        .collect();
    let names: Vec<String> = (1..=nvars).map(|i| format!("x{i}")).collect();
    let mut check = Check::new(name, "localLie");
    for a in 0..monos.len() {
        for b in a + 1..monos.len() {
            let ab = bracket(&monos[a], &monos[b]);
            for c in b + 1..monos.len() {
                let bc = bracket(&monos[b], &monos[c]);
                let ca = bracket(&monos[c], &monos[a]);
                let defect = &(&bracket(&ab, &monos[c]) + &bracket(&bc, &monos[a])) + &bracket(&ca, &monos[b]);
                let ok = check.observe(&defect, || {
                    format!(
                        "({}, {}, {})",
                        monos[a].to_string_with(&names),
                        monos[b].to_string_with(&names),
                        monos[c].to_string_with(&names)
                    )
                });
                if !ok {
                    return check;
                }
            }
        }
    }
    check
}

/// The tensor conditions plus the Jacobiator cross-check on monomials up
/// to `cap`, and a flag stating whether the two routes agree.
pub fn check_jacobi_structure(j: &JacobiData, cap: u32) -> CheckSet {
    let mut checks = jacobi_conditions(j);
    let tensor_ok = checks.all_pass();
    let jacobiator = check_bracket_jacobi("jacobiator-monomials", cap, j.nvars(), |f, g| j.bracket(f, g));
    let agree = Check::new("tensor-vs-jacobiator", "LambdaLambda")
        .with_status(jacobiator.pass == tensor_ok, || {
            format!("tensor conditions {tensor_ok}, monomial Jacobiator {}", jacobiator.pass)
        });
    checks.push(jacobiator);
    checks.push(agree);
    checks
}

/// The rank-one map `π(ξ, u) = (−⟨ξ, X⟩, uX + Λ♯ξ)`.
pub fn jacobi_to_pi(j: &JacobiData) -> PiMap {
    PiMap::Line {
        lambda: j.lambda.clone(),
        y: j.x_field.clone(),
    }
}

/// A local Lie algebra recovered from a rank-one Dirac graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalLie {
    pub data: JacobiData,
    pub checks: CheckSet,
}

/// Recovers `(Λ, X)` from a rank-one Dirac graph and verifies the recovered
/// bracket `[u,v] = 𝕡⟦𝕕u,𝕕v⟧_π` symbolically on monomials.
pub fn line_dirac_to_local_lie(pi: &PiMap, cap: u32) -> Result<LocalLie> {
    if pi.rank() != 1 {
        return Err(Error::shape("line bundle rank", 1, pi.rank()));
    }
    let opts = CheckOptions {
        mode: IntegrabilityMode::Finite,
        degree_cap: cap,
        ..CheckOptions::default()
    };
    let integrability = dirac::check_integrability(pi, &opts)?;
    if let Some(failed) = integrability.first_failure() {
        let names: Vec<String> = (1..=pi.nvars()).map(|i| format!("x{i}")).collect();
        let defect = failed.witness.as_ref().map(|w| w.render_defect(&names)).unwrap_or_default();
        return Err(Error::Structural(format!("graph is not a Dirac structure: {} defect {defect}", failed.name)));
    }
    let Some(PiMap::Line { lambda, y }) = pi.canonical() else {
        return Err(Error::Structural("rank-one map without a line normal form".into()));
    };
    let data = JacobiData::new(lambda, y)?;
    let n = pi.nvars();
    let lift = |f: &Poly| crate::bundle::JetSection::jet_lift(&SectionE::new(vec![f.clone()]));
    let via_pi = |f: &Poly, g: &Poly| pi.bracket(&lift(f), &lift(g)).val.get(0).clone();

    let monos: Vec<Poly> = monomials_up_to(n, cap).into_iter().map(|m| Poly::monomial(n, m, int(1))).collect();
    let mut matches = Check::new("recovered-bracket", "temop562665");
    for f in &monos {
        for g in &monos {
            matches.observe(&(&via_pi(f, g) - &data.bracket(f, g)), || "monomial pair".to_string());
        }
    }
    let jacobi = check_bracket_jacobi("recovered-jacobi", cap, n, via_pi);
    Ok(LocalLie {
        data,
        checks: [matches, jacobi].into_iter().collect(),
    })
}

/// The anchor rule `[u, fv] = f[u,v] + (A(u)f)v` with `A(u) = Λ♯(du) + uX`,
/// and whether `A` is `C∞`-linear (it is not unless `Λ = 0` and `X = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorLike {
    pub rule: Check,
    pub bundle_map: Check,
}

pub fn check_anchor_like(j: &JacobiData, samples: usize, seed: u64, cap: u32) -> AnchorLike {
    let n = j.nvars();
    let mut sampler = Sampler::new(seed);
    let mut triples: Vec<(Poly, Poly, Poly)> = Vec::new();
    for i in 0..n {
        let x = Poly::var(n, i);
        triples.push((x.clone(), x.clone(), Poly::one(n)));
        triples.push((Poly::one(n), x, Poly::one(n)));
    }
    for _ in 0..samples {
        triples.push((sampler.poly(n, cap), sampler.poly(n, cap), sampler.poly(n, cap)));
    }
    let mut rule = Check::new("anchor-rule", "etqwetr");
    let mut bundle_map = Check::new("anchor-like-bundle-map", "fourequivalentstatements-1");
    for (idx, (u, f, v)) in triples.iter().enumerate() {
        let lhs = j.bracket(u, &(f * v));
        let rhs = &(f * &j.bracket(u, v)) + &(&j.anchor_like(u).apply(f) * v);
        rule.observe(&(&lhs - &rhs), || format!("(u, f, v) #{}", idx + 1));
        let lin = &j.anchor_like(&(f * u)) - &j.anchor_like(u).scale(f);
        bundle_map.observe(&lin, || format!("(u, f) #{}", idx + 1));
    }
    AnchorLike { rule, bundle_map }
}
