//! The omni-Lie algebroid `ℰ = 𝔇E ⊕ 𝔍E`: its `E`-valued symmetric pairing,
//! the Dorfman bracket, and a sample-based check of the five structural
//! properties.

use std::ops::{Add, Sub};

use crate::bundle::{DerivationDE, JetSection, SectionE};
use crate::error::{Error, Result};
use crate::poly::{rat, Poly};
use crate::report::{Check, CheckSet, Defect};

/// A section `𝔡 + μ` of `ℰ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OmniSection {
    pub de: DerivationDE,
    pub jet: JetSection,
}

impl OmniSection {
    pub fn new(de: DerivationDE, jet: JetSection) -> Result<Self> {
        if de.nvars() != jet.nvars() {
            return Err(Error::PatchMismatch {
                left: de.nvars(),
                right: jet.nvars(),
            });
        }
        if de.rank() != jet.rank() {
            return Err(Error::shape("omni section rank", de.rank(), jet.rank()));
        }
        Ok(OmniSection { de, jet })
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        OmniSection {
            de: DerivationDE::zero(nvars, rank),
            jet: JetSection::zero(nvars, rank),
        }
    }

    pub fn from_derivation(de: DerivationDE) -> Self {
        let jet = JetSection::zero(de.nvars(), de.rank());
        OmniSection { de, jet }
    }

    pub fn from_jet(jet: JetSection) -> Self {
        let de = DerivationDE::zero(jet.nvars(), jet.rank());
        OmniSection { de, jet }
    }

    pub fn nvars(&self) -> usize {
        self.de.nvars()
    }

    pub fn rank(&self) -> usize {
        self.de.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.de.is_zero() && self.jet.is_zero()
    }

    /// The anchor `ρ`, projection onto `𝔇E`.
    pub fn rho(&self) -> &DerivationDE {
        &self.de
    }

    pub fn scale(&self, f: &Poly) -> Self {
        OmniSection {
            de: self.de.scale(f),
            jet: self.jet.scale(f),
        }
    }

    /// `⟨⟨X, Y⟩⟩ = ½(⟨ν, 𝔡⟩_E + ⟨μ, 𝔯⟩_E)`.
    pub fn sym_pairing(&self, other: &OmniSection) -> SectionE {
        let s = &other.jet.pairing(&self.de) + &self.jet.pairing(&other.de);
        s.scale(&Poly::constant(self.nvars(), rat(1, 2)))
    }

    /// `⟦𝔡+μ, 𝔯+ν⟧ = [𝔡,𝔯]_𝔇 + 𝔏_𝔡 ν − 𝔏_𝔯 μ + 𝕕⟨μ, 𝔯⟩_E`.
    pub fn dorfman(&self, other: &OmniSection) -> OmniSection {
        let de = self.de.bracket(&other.de);
        let jet = &(&self.de.lie_derivative(&other.jet) - &other.de.lie_derivative(&self.jet))
            + &JetSection::jet_lift(&self.jet.pairing(&other.de));
        OmniSection { de, jet }
    }

    /// Skew-symmetrization `½(⟦X,Y⟧ − ⟦Y,X⟧)`.
    pub fn skew_dorfman(&self, other: &OmniSection) -> OmniSection {
        let d = &self.dorfman(other) - &other.dorfman(self);
        d.scale(&Poly::constant(self.nvars(), rat(1, 2)))
    }
}

impl Add<&OmniSection> for &OmniSection {
    type Output = OmniSection;
    fn add(self, rhs: &OmniSection) -> OmniSection {
        OmniSection {
            de: &self.de + &rhs.de,
            jet: &self.jet + &rhs.jet,
        }
    }
}

impl Sub<&OmniSection> for &OmniSection {
    type Output = OmniSection;
    fn sub(self, rhs: &OmniSection) -> OmniSection {
        OmniSection {
            de: &self.de - &rhs.de,
            jet: &self.jet - &rhs.jet,
        }
    }
}

impl Defect for OmniSection {
    fn nonzero_components(&self) -> Vec<(String, Poly)> {
        let mut out = self.de.nonzero_components();
        out.extend(self.jet.nonzero_components());
        out
    }
}

pub fn sym_pairing(x: &OmniSection, y: &OmniSection) -> SectionE {
    x.sym_pairing(y)
}

pub fn dorfman(x: &OmniSection, y: &OmniSection) -> OmniSection {
    x.dorfman(y)
}

/// Weinstein's skew bracket on `gl(V) ⊕ V` over a point:
/// `([ξ₁, ξ₂], ½(ξ₁v₂ − ξ₂v₁))`.
pub fn weinstein_bracket(x: &OmniSection, y: &OmniSection) -> Result<OmniSection> {
    if x.nvars() != 0 || y.nvars() != 0 {
        return Err(Error::shape("point base", 0, x.nvars().max(y.nvars())));
    }
    let de = x.de.bracket(&y.de);
    let half = Poly::constant(0, rat(1, 2));
    let v = (&x.de.apply(&y.jet.val) - &y.de.apply(&x.jet.val)).scale(&half);
    let jet = JetSection::new(crate::poly::PolyMatrix::zeros(0, x.rank(), 0), v)?;
    Ok(OmniSection { de, jet })
}

/// One sample for [`check_omni_axioms`]: three sections and a function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmniSample {
    pub x: OmniSection,
    pub y: OmniSection,
    pub z: OmniSection,
    pub f: Poly,
}

pub const OMNI_PROPERTIES: [&str; 5] = [
    "omni-prop-1-leibniz",
    "omni-prop-2-anchor-morphism",
    "omni-prop-3-module-rule",
    "omni-prop-4-square",
    "omni-prop-5-invariance",
];

/// Evaluates each of the five omni-Lie algebroid properties on every sample;
/// each report entry passes iff its defect is the zero polynomial throughout.
pub fn check_omni_axioms(samples: &[OmniSample]) -> CheckSet {
    let mut checks: Vec<Check> = OMNI_PROPERTIES
        .iter()
        .enumerate()
        .map(|(i, name)| Check::new(*name, format!("omni-prop-{}", i + 1)))
        .collect();
    for (idx, s) in samples.iter().enumerate() {
        let (x, y, z, f) = (&s.x, &s.y, &s.z, &s.f);
        let label = || format!("sample {}", idx + 1);
        let xy = x.dorfman(y);
        let xz = x.dorfman(z);

        let leibniz = &(&x.dorfman(&y.dorfman(z)) - &xy.dorfman(z)) - &y.dorfman(&xz);
        checks[0].observe(&leibniz, label);

        let anchor = &xy.de - &x.de.bracket(&y.de);
        checks[1].observe(&anchor, label);

        let fy = y.scale(f);
        let af = x.de.base.apply(f);
        let module = &(&x.dorfman(&fy) - &xy.scale(f)) - &y.scale(&af);
        checks[2].observe(&module, label);

        let square = &x.dorfman(x) - &OmniSection::from_jet(JetSection::jet_lift(&x.sym_pairing(x)));
        checks[3].observe(&square, label);

        let invariance =
            &(&x.de.apply(&y.sym_pairing(z)) - &xy.sym_pairing(z)) - &y.sym_pairing(&xz);
        checks[4].observe(&invariance, label);
    }
    checks.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::VectorField;
    use crate::poly::PolyMatrix;
    use crate::sample::Sampler;

    #[test]
    fn cross_terms_vanish() {
        let mut s = Sampler::new(1);
        let x = OmniSection::from_derivation(s.derivation(2, 2, 2));
        let y = OmniSection::from_jet(s.jet(2, 2, 2));
        let lone = OmniSection::from_derivation(s.derivation(2, 2, 2));
        assert!(x.sym_pairing(&lone).is_zero());
        assert_eq!(x.sym_pairing(&y), y.sym_pairing(&x));
        let u = s.section(2, 2, 2);
        let pure_jet = OmniSection::from_jet(JetSection::jet_lift(&u));
        assert!(pure_jet.sym_pairing(&pure_jet).is_zero());
    }

    #[test]
    fn restriction_to_gauge_part_is_commutator() {
        let mut s = Sampler::new(2);
        let d = s.derivation(2, 2, 2);
        let r = s.derivation(2, 2, 2);
        let b = OmniSection::from_derivation(d.clone()).dorfman(&OmniSection::from_derivation(r.clone()));
        assert_eq!(b, OmniSection::from_derivation(d.bracket(&r)));
    }

    #[test]
    fn point_base_dorfman_and_weinstein() {
        let n = 0;
        let m = |rows: Vec<Vec<i64>>| {
            PolyMatrix::from_rows(n, rows.into_iter().map(|r| r.into_iter().map(|c| Poly::integer(n, c)).collect()).collect()).unwrap()
        };
        let v = |c: Vec<i64>| SectionE::new(c.into_iter().map(|c| Poly::integer(n, c)).collect());
        let xi1 = m(vec![vec![1, 2], vec![0, -1]]);
        let xi2 = m(vec![vec![0, 1], vec![3, 1]]);
        let v1 = v(vec![1, -2]);
        let v2 = v(vec![2, 5]);
        let x = OmniSection::new(
            DerivationDE::new(xi1.clone(), VectorField::zero(0)).unwrap(),
            JetSection::new(PolyMatrix::zeros(0, 2, 0), v1.clone()).unwrap(),
        )
        .unwrap();
        let y = OmniSection::new(
            DerivationDE::new(xi2.clone(), VectorField::zero(0)).unwrap(),
            JetSection::new(PolyMatrix::zeros(0, 2, 0), v2.clone()).unwrap(),
        )
        .unwrap();
        let b = x.dorfman(&y);
        // Oracle: plain matrix arithmetic.
        assert_eq!(b.de.endo, &(&xi1 * &xi2) - &(&xi2 * &xi1));
        assert_eq!(b.jet.val, SectionE::new(xi1.mul_vec(v2.components())));
        assert_eq!(x.skew_dorfman(&y), weinstein_bracket(&x, &y).unwrap());
    }

    #[test]
    fn module_rule_with_unit_function_is_trivial() {
        let mut s = Sampler::new(3);
        let sample = OmniSample {
            x: s.omni(1, 1, 2),
            y: s.omni(1, 1, 2),
            z: s.omni(1, 1, 2),
            f: Poly::one(1),
        };
        let checks = check_omni_axioms(&[sample]);
        assert_eq!(checks.passed("omni-prop-3-module-rule"), Some(true));
    }

    #[test]
    fn weinstein_needs_point_base() {
        let x = OmniSection::zero(1, 1);
        assert!(weinstein_bracket(&x, &x).is_err());
    }
}
