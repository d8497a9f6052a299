//! Sections of `E`, `E*`, the gauge algebroid `𝔇E` and the jet bundle `𝔍E`
//! over a trivialized patch.
//!
//! With a global frame `e_1..e_k` both bundles split:
//! `𝔇E = gl(E) ⊕ TM` and `𝔍E = Hom(TM, E) ⊕ E`. A [`DerivationDE`] is the
//! pair `(Φ, x)` acting as `u ↦ Φu + x(u)`, and a [`JetSection`] is the pair
//! `(𝔶, u)` whose `E`-pairing with `(Φ, x)` is `Φu + 𝔶x`.
//!
//! Methods panic when operands live on different patches or ranks; the
//! free functions named after the operations check shapes and return
//! [`Error::Shape`] instead.

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyMatrix};

/// A section of `E` (or of `E*`) in the global frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SectionE {
    components: Vec<Poly>,
}

impl SectionE {
    pub fn new(components: Vec<Poly>) -> Self {
        assert!(!components.is_empty(), "a section needs at least one component");
        let n = components[0].nvars();
        assert!(components.iter().all(|p| p.nvars() == n), "section components on different patches");
        SectionE { components }
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        SectionE::new(vec![Poly::zero(nvars); rank])
    }

    /// The frame section `e_a` (0-based).
    pub fn basis(nvars: usize, rank: usize, a: usize) -> Self {
        let mut s = SectionE::zero(nvars, rank);
        s.components[a] = Poly::one(nvars);
        s
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn get(&self, a: usize) -> &Poly {
        &self.components[a]
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, f: &Poly) -> Self {
        SectionE::new(self.components.iter().map(|c| c * f).collect())
    }

    /// The scalar `⟨φ, u⟩` between a section of `E*` and one of `E`.
    pub fn dot(&self, other: &SectionE) -> Poly {
        assert_eq!(self.rank(), other.rank(), "dual pairing rank");
        let mut acc = Poly::zero(self.nvars());
        for (a, b) in self.components.iter().zip(&other.components) {
            acc += &(a * b);
        }
        acc
    }

    pub fn diff(&self, i: usize) -> Self {
        SectionE::new(self.components.iter().map(|c| c.diff(i)).collect())
    }

    /// The `k × n` Jacobian `[∂_j u_a]`.
    pub fn jacobian(&self) -> PolyMatrix {
        let n = self.nvars();
        PolyMatrix::from_fn(n, self.rank(), n, |a, j| self.components[a].diff(j))
    }

    pub fn as_column(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.nvars(), self.rank(), 1, |a, _| self.components[a].clone())
    }

    fn zip(&self, other: &SectionE, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        assert_eq!(self.rank(), other.rank(), "section rank mismatch");
        SectionE::new(self.components.iter().zip(&other.components).map(|(a, b)| f(a, b)).collect())
    }
}

impl Add<&SectionE> for &SectionE {
    type Output = SectionE;
    fn add(self, rhs: &SectionE) -> SectionE {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub<&SectionE> for &SectionE {
    type Output = SectionE;
    fn sub(self, rhs: &SectionE) -> SectionE {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &SectionE {
    type Output = SectionE;
    fn neg(self) -> SectionE {
        SectionE::new(self.components.iter().map(|c| -c).collect())
    }
}

/// A vector field `Σ xⁱ ∂ᵢ` on the patch; its length is the base dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(components: Vec<Poly>) -> Self {
        let n = components.len();
        assert!(components.iter().all(|p| p.nvars() == n), "vector field arity must equal the base dimension");
        VectorField { components }
    }

    pub fn zero(n: usize) -> Self {
        VectorField::new(vec![Poly::zero(n); n])
    }

    /// `∂/∂x_i` (0-based).
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut v = VectorField::zero(n);
        v.components[i] = Poly::one(n);
        v
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn get(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Directional derivative `x(f)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(self.dim());
        for (i, xi) in self.components.iter().enumerate() {
            if !xi.is_zero() {
                acc += &(xi * &f.diff(i));
            }
        }
        acc
    }

    pub fn apply_section(&self, u: &SectionE) -> SectionE {
        SectionE::new(u.components().iter().map(|c| self.apply(c)).collect())
    }

    pub fn apply_matrix(&self, m: &PolyMatrix) -> PolyMatrix {
        m.map(|p| self.apply(p))
    }

    /// `[x, y]ⁱ = x(yⁱ) − y(xⁱ)`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        assert_eq!(self.dim(), other.dim(), "vector field dimension");
        VectorField::new(
            (0..self.dim())
                .map(|i| &self.apply(&other.components[i]) - &other.apply(&self.components[i]))
                .collect(),
        )
    }

    pub fn scale(&self, f: &Poly) -> Self {
        VectorField::new(self.components.iter().map(|c| c * f).collect())
    }

    /// `⟨ω, x⟩` for a covector given by its components.
    pub fn contract(&self, omega: &[Poly]) -> Poly {
        assert_eq!(omega.len(), self.dim());
        let mut acc = Poly::zero(self.dim());
        for (w, x) in omega.iter().zip(&self.components) {
            acc += &(w * x);
        }
        acc
    }

    fn zip(&self, other: &VectorField, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector field dimension");
        VectorField::new(self.components.iter().zip(&other.components).map(|(a, b)| f(a, b)).collect())
    }
}

impl Add<&VectorField> for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub<&VectorField> for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        self.zip(rhs, |a, b| a - b)
    }
}

/// A section `(Φ, x)` of the gauge algebroid `𝔇E`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DerivationDE {
    pub endo: PolyMatrix,
    pub base: VectorField,
}

impl DerivationDE {
    pub fn new(endo: PolyMatrix, base: VectorField) -> Result<Self> {
        if endo.rows() != endo.cols() || endo.rows() == 0 {
            return Err(Error::shape("derivation endomorphism", "nonempty square matrix", format!("{:?}", endo.shape())));
        }
        if endo.nvars() != base.dim() {
            return Err(Error::PatchMismatch {
                left: endo.nvars(),
                right: base.dim(),
            });
        }
        Ok(DerivationDE { endo, base })
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        DerivationDE {
            endo: PolyMatrix::zeros(nvars, rank, rank),
            base: VectorField::zero(nvars),
        }
    }

    pub fn from_endo(endo: PolyMatrix) -> Self {
        let n = endo.nvars();
        DerivationDE::new(endo, VectorField::zero(n)).expect("square endomorphism")
    }

    pub fn from_vector_field(rank: usize, base: VectorField) -> Self {
        DerivationDE {
            endo: PolyMatrix::zeros(base.dim(), rank, rank),
            base,
        }
    }

    pub fn rank(&self) -> usize {
        self.endo.rows()
    }

    pub fn nvars(&self) -> usize {
        self.base.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.endo.is_zero() && self.base.is_zero()
    }

    /// `d(u) = Φu + x(u)`.
    pub fn apply(&self, u: &SectionE) -> SectionE {
        let phi_u = SectionE::new(self.endo.mul_vec(u.components()));
        &phi_u + &self.base.apply_section(u)
    }

    /// Commutator of operators:
    /// `(Φ₁Φ₂ − Φ₂Φ₁ + x₁(Φ₂) − x₂(Φ₁), [x₁, x₂])`.
    pub fn bracket(&self, other: &DerivationDE) -> DerivationDE {
        let comm = &(&self.endo * &other.endo) - &(&other.endo * &self.endo);
        let lie = &self.base.apply_matrix(&other.endo) - &other.base.apply_matrix(&self.endo);
        DerivationDE {
            endo: &comm + &lie,
            base: self.base.bracket(&other.base),
        }
    }

    /// The anchor `α(Φ, x) = x`.
    pub fn anchor(&self) -> &VectorField {
        &self.base
    }

    /// The operator on `E*` with `⟨d̃φ, u⟩ = x⟨φ, u⟩ − ⟨φ, du⟩`, namely `(−Φᵀ, x)`.
    pub fn dual(&self) -> DerivationDE {
        DerivationDE {
            endo: -&self.endo.transpose(),
            base: self.base.clone(),
        }
    }

    pub fn scale(&self, f: &Poly) -> Self {
        DerivationDE {
            endo: self.endo.scale(f),
            base: self.base.scale(f),
        }
    }

    /// Frame `{(E_ab, 0)} ∪ {(0, ∂_i)}`; index `a·k + b`, then `k² + i`.
    pub fn frame(nvars: usize, rank: usize) -> Vec<DerivationDE> {
        let mut out = Vec::with_capacity(rank * rank + nvars);
        for a in 0..rank {
            for b in 0..rank {
                let mut endo = PolyMatrix::zeros(nvars, rank, rank);
                endo.set(a, b, Poly::one(nvars));
                out.push(DerivationDE::from_endo(endo));
            }
        }
        for i in 0..nvars {
            out.push(DerivationDE::from_vector_field(rank, VectorField::coordinate(nvars, i)));
        }
        out
    }

    /// Coefficients in [`DerivationDE::frame`] order.
    pub fn frame_coordinates(&self) -> Vec<Poly> {
        let k = self.rank();
        let mut out = Vec::with_capacity(k * k + self.nvars());
        for a in 0..k {
            for b in 0..k {
                out.push(self.endo.get(a, b).clone());
            }
        }
        out.extend(self.base.components().iter().cloned());
        out
    }

    pub fn from_frame_coordinates(nvars: usize, rank: usize, coords: &[Poly]) -> Self {
        assert_eq!(coords.len(), rank * rank + nvars);
        DerivationDE {
            endo: PolyMatrix::from_fn(nvars, rank, rank, |a, b| coords[a * rank + b].clone()),
            base: VectorField::new(coords[rank * rank..].to_vec()),
        }
    }

    /// `𝔏_d μ`, see [`lie_derivative`].
    pub fn lie_derivative(&self, mu: &JetSection) -> JetSection {
        let n = self.nvars();
        let phi = &self.endo;
        let x = &self.base;
        let u = &mu.val;
        let mut hom = PolyMatrix::zeros(n, self.rank(), n);
        for j in 0..n {
            let yj = mu.hom.column(j);
            let mut col = phi.mul_vec(&yj);
            for (a, entry) in col.iter_mut().enumerate() {
                *entry += &x.apply(&yj[a]);
            }
            let dphi_u = phi.diff(j).mul_vec(u.components());
            for (a, entry) in col.iter_mut().enumerate() {
                *entry += &dphi_u[a];
            }
            for i in 0..n {
                let dxi = x.get(i).diff(j);
                if dxi.is_zero() {
                    continue;
                }
                for (a, entry) in col.iter_mut().enumerate() {
                    *entry += &(&dxi * mu.hom.get(a, i));
                }
            }
            for (a, entry) in col.into_iter().enumerate() {
                hom.set(a, j, entry);
            }
        }
        JetSection {
            hom,
            val: self.apply(u),
        }
    }
}

impl Add<&DerivationDE> for &DerivationDE {
    type Output = DerivationDE;
    fn add(self, rhs: &DerivationDE) -> DerivationDE {
        DerivationDE {
            endo: &self.endo + &rhs.endo,
            base: &self.base + &rhs.base,
        }
    }
}

impl Sub<&DerivationDE> for &DerivationDE {
    type Output = DerivationDE;
    fn sub(self, rhs: &DerivationDE) -> DerivationDE {
        DerivationDE {
            endo: &self.endo - &rhs.endo,
            base: &self.base - &rhs.base,
        }
    }
}

impl Neg for &DerivationDE {
    type Output = DerivationDE;
    fn neg(self) -> DerivationDE {
        DerivationDE {
            endo: -&self.endo,
            base: VectorField::new(self.base.components().iter().map(|c| -c).collect()),
        }
    }
}

/// A section `(𝔶, u)` of the jet bundle `𝔍E`; `hom` is `k × n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JetSection {
    pub hom: PolyMatrix,
    pub val: SectionE,
}

impl JetSection {
    pub fn new(hom: PolyMatrix, val: SectionE) -> Result<Self> {
        if hom.rows() != val.rank() || hom.cols() != hom.nvars() {
            return Err(Error::shape(
                "jet section",
                format!("{}x{} Hom(TM,E) part", val.rank(), hom.nvars()),
                format!("{:?}", hom.shape()),
            ));
        }
        if hom.nvars() != val.nvars() {
            return Err(Error::PatchMismatch {
                left: hom.nvars(),
                right: val.nvars(),
            });
        }
        Ok(JetSection { hom, val })
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        JetSection {
            hom: PolyMatrix::zeros(nvars, rank, nvars),
            val: SectionE::zero(nvars, rank),
        }
    }

    /// `𝕕u = [u] = (Jac(u), u)`.
    pub fn jet_lift(u: &SectionE) -> Self {
        JetSection {
            hom: u.jacobian(),
            val: u.clone(),
        }
    }

    /// Image of `𝔶 ∈ Γ(Hom(TM, E))` under the embedding `𝕖`.
    pub fn from_hom(hom: PolyMatrix) -> Self {
        let (k, n) = (hom.rows(), hom.nvars());
        JetSection {
            hom,
            val: SectionE::zero(n, k),
        }
    }

    /// `ω ⊗ u` embedded in `𝔍E`: `hom[a][j] = u_a ω_j`.
    pub fn tensor(omega: &[Poly], u: &SectionE) -> Self {
        let n = u.nvars();
        assert_eq!(omega.len(), n, "one-form arity");
        JetSection::from_hom(PolyMatrix::from_fn(n, u.rank(), n, |a, j| u.get(a) * &omega[j]))
    }

    pub fn rank(&self) -> usize {
        self.val.rank()
    }

    pub fn nvars(&self) -> usize {
        self.hom.nvars()
    }

    /// The projection `𝕡(μ)`.
    pub fn project(&self) -> &SectionE {
        &self.val
    }

    pub fn is_zero(&self) -> bool {
        self.hom.is_zero() && self.val.is_zero()
    }

    pub fn scale(&self, f: &Poly) -> Self {
        JetSection {
            hom: self.hom.scale(f),
            val: self.val.scale(f),
        }
    }

    /// `⟨μ, d⟩_E = Φ·val + hom·x`.
    pub fn pairing(&self, d: &DerivationDE) -> SectionE {
        let phi_u = SectionE::new(d.endo.mul_vec(self.val.components()));
        let y_x = SectionE::new(self.hom.mul_vec(d.base.components()));
        &phi_u + &y_x
    }

    /// Frame `{E_aj in Hom(TM,E)} ∪ {e_a}`; index `a·n + j`, then `k·n + a`.
    pub fn frame(nvars: usize, rank: usize) -> Vec<JetSection> {
        let mut out = Vec::with_capacity(rank * nvars + rank);
        for a in 0..rank {
            for j in 0..nvars {
                let mut hom = PolyMatrix::zeros(nvars, rank, nvars);
                hom.set(a, j, Poly::one(nvars));
                out.push(JetSection::from_hom(hom));
            }
        }
        for a in 0..rank {
            out.push(JetSection {
                hom: PolyMatrix::zeros(nvars, rank, nvars),
                val: SectionE::basis(nvars, rank, a),
            });
        }
        out
    }

    /// Coefficients in [`JetSection::frame`] order.
    pub fn frame_coordinates(&self) -> Vec<Poly> {
        let (k, n) = (self.rank(), self.nvars());
        let mut out = Vec::with_capacity(k * n + k);
        for a in 0..k {
            for j in 0..n {
                out.push(self.hom.get(a, j).clone());
            }
        }
        out.extend(self.val.components().iter().cloned());
        out
    }

    pub fn from_frame_coordinates(nvars: usize, rank: usize, coords: &[Poly]) -> Self {
        assert_eq!(coords.len(), rank * nvars + rank);
        JetSection {
            hom: PolyMatrix::from_fn(nvars, rank, nvars, |a, j| coords[a * nvars + j].clone()),
            val: SectionE::new(coords[rank * nvars..].to_vec()),
        }
    }

    /// Rebuilds a jet from its pairings with the `𝔇E` frame: `(E_{0b}, 0)`
    /// yields `val_b` and `(0, ∂_j)` yields hom column `j`.
    pub fn from_pairings(nvars: usize, rank: usize, mut pair: impl FnMut(&DerivationDE) -> SectionE) -> Self {
        let frame = DerivationDE::frame(nvars, rank);
        let val = SectionE::new((0..rank).map(|b| pair(&frame[b]).get(0).clone()).collect());
        let mut hom = PolyMatrix::zeros(nvars, rank, nvars);
        for j in 0..nvars {
            let col = pair(&frame[rank * rank + j]);
            for a in 0..rank {
                hom.set(a, j, col.get(a).clone());
            }
        }
        JetSection { hom, val }
    }
}

impl Add<&JetSection> for &JetSection {
    type Output = JetSection;
    fn add(self, rhs: &JetSection) -> JetSection {
        JetSection {
            hom: &self.hom + &rhs.hom,
            val: &self.val + &rhs.val,
        }
    }
}

impl Sub<&JetSection> for &JetSection {
    type Output = JetSection;
    fn sub(self, rhs: &JetSection) -> JetSection {
        JetSection {
            hom: &self.hom - &rhs.hom,
            val: &self.val - &rhs.val,
        }
    }
}

impl Neg for &JetSection {
    type Output = JetSection;
    fn neg(self) -> JetSection {
        JetSection {
            hom: -&self.hom,
            val: -&self.val,
        }
    }
}

fn check_derivation_section(d: &DerivationDE, u: &SectionE) -> Result<()> {
    if d.nvars() != u.nvars() {
        return Err(Error::PatchMismatch {
            left: d.nvars(),
            right: u.nvars(),
        });
    }
    if d.rank() != u.rank() {
        return Err(Error::shape("fiber rank", d.rank(), u.rank()));
    }
    Ok(())
}

fn check_derivations(d1: &DerivationDE, d2: &DerivationDE) -> Result<()> {
    if d1.nvars() != d2.nvars() {
        return Err(Error::PatchMismatch {
            left: d1.nvars(),
            right: d2.nvars(),
        });
    }
    if d1.rank() != d2.rank() {
        return Err(Error::shape("fiber rank", d1.rank(), d2.rank()));
    }
    Ok(())
}

pub fn apply_derivation(d: &DerivationDE, u: &SectionE) -> Result<SectionE> {
    check_derivation_section(d, u)?;
    Ok(d.apply(u))
}

pub fn bracket_de(d1: &DerivationDE, d2: &DerivationDE) -> Result<DerivationDE> {
    check_derivations(d1, d2)?;
    Ok(d1.bracket(d2))
}

pub fn anchor(d: &DerivationDE) -> VectorField {
    d.anchor().clone()
}

pub fn jet_lift(u: &SectionE) -> JetSection {
    JetSection::jet_lift(u)
}

pub fn pairing_e(mu: &JetSection, d: &DerivationDE) -> Result<SectionE> {
    check_derivation_section(d, &mu.val)?;
    Ok(mu.pairing(d))
}

/// The Lie derivative of a jet along a derivation, determined by
/// `⟨𝔏_d μ, d′⟩ = d⟨μ, d′⟩ − ⟨μ, [d, d′]⟩` for every `d′`.
///
/// Closed form: hom column `j` is `Φ𝔶ⱼ + x(𝔶ⱼ) + (∂ⱼΦ)u + Σᵢ (∂ⱼxⁱ) 𝔶ᵢ`,
/// and the value part is `d(u)`.
pub fn lie_derivative(d: &DerivationDE, mu: &JetSection) -> JetSection {
    d.lie_derivative(mu)
}

pub fn dual_operator(d: &DerivationDE) -> DerivationDE {
    d.dual()
}

/// `⟨μ, ς⟩_{T*M}`: the covector `d⟨u, φ⟩` extended bilinearly, as a `1 × n` matrix.
pub fn pairing_tstar(mu: &JetSection, sigma: &JetSection) -> Result<PolyMatrix> {
    if mu.nvars() != sigma.nvars() {
        return Err(Error::PatchMismatch {
            left: mu.nvars(),
            right: sigma.nvars(),
        });
    }
    if mu.rank() != sigma.rank() {
        return Err(Error::shape("dual ranks", mu.rank(), sigma.rank()));
    }
    let n = mu.nvars();
    Ok(PolyMatrix::from_fn(n, 1, n, |_, j| {
        let hm = SectionE::new(mu.hom.column(j));
        let hs = SectionE::new(sigma.hom.column(j));
        &hm.dot(&sigma.val) + &mu.val.dot(&hs)
    }))
}
