//! Seeded random polynomial data for sample-based identity checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bundle::{DerivationDE, JetSection, SectionE, VectorField};
use crate::omni::OmniSection;
use crate::poly::{int, Monomial, Poly, PolyMatrix};

/// All exponent vectors in `nvars` variables of total degree at most `cap`,
/// in graded-lex order.
pub fn monomials_up_to(nvars: usize, cap: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_exponents(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, cap, &mut out);
    out.sort();
    out
}

/// Deterministic source of random polynomial sections.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    /// Coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
    /// Probability that a given monomial appears in a random polynomial.
    pub density: f64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            coeff_bound: 3,
            density: 0.5,
        }
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn poly(&mut self, nvars: usize, degree_cap: u32) -> Poly {
        let mut p = Poly::zero(nvars);
        for m in monomials_up_to(nvars, degree_cap) {
            if !self.rng.gen_bool(self.density) {
                continue;
            }
            let mut c = 0;
            while c == 0 {
                c = self.rng.gen_range(-self.coeff_bound..=self.coeff_bound);
            }
            p += &Poly::monomial(nvars, m, int(c));
        }
        p
    }

    /// A single monomial with unit coefficient.
    pub fn monomial(&mut self, nvars: usize, degree_cap: u32) -> Poly {
        let all = monomials_up_to(nvars, degree_cap);
        let m = all.choose(&mut self.rng).expect("at least the constant monomial").clone();
        Poly::monomial(nvars, m, int(1))
    }

    pub fn section(&mut self, nvars: usize, rank: usize, degree_cap: u32) -> SectionE {
        SectionE::new((0..rank).map(|_| self.poly(nvars, degree_cap)).collect())
    }

    pub fn vector_field(&mut self, nvars: usize, degree_cap: u32) -> VectorField {
        VectorField::new((0..nvars).map(|_| self.poly(nvars, degree_cap)).collect())
    }

    pub fn matrix(&mut self, nvars: usize, rows: usize, cols: usize, degree_cap: u32) -> PolyMatrix {
        PolyMatrix::from_fn(nvars, rows, cols, |_, _| self.poly(nvars, degree_cap))
    }

    pub fn derivation(&mut self, nvars: usize, rank: usize, degree_cap: u32) -> DerivationDE {
        DerivationDE {
            endo: self.matrix(nvars, rank, rank, degree_cap),
            base: self.vector_field(nvars, degree_cap),
        }
    }

    /// A jet with independent random `Hom(TM, E)` and value parts.
    pub fn jet(&mut self, nvars: usize, rank: usize, degree_cap: u32) -> JetSection {
        JetSection {
            hom: self.matrix(nvars, rank, nvars, degree_cap),
            val: self.section(nvars, rank, degree_cap),
        }
    }

    /// `f·𝕕u` with `f` a monomial and `u` a random section.
    pub fn scaled_jet_lift(&mut self, nvars: usize, rank: usize, degree_cap: u32) -> JetSection {
        let f = self.monomial(nvars, degree_cap);
        JetSection::jet_lift(&self.section(nvars, rank, degree_cap)).scale(&f)
    }

    pub fn omni(&mut self, nvars: usize, rank: usize, degree_cap: u32) -> OmniSection {
        OmniSection {
            de: self.derivation(nvars, rank, degree_cap),
            jet: self.jet(nvars, rank, degree_cap),
        }
    }
}
