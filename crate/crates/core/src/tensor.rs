use crate::bundle::SectionE;
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyMatrix};

/// Frame bracket coefficients `Ωᶜₐᵦ`: `[e_a, e_b] = Σ_c Ωᶜₐᵦ e_c`.
///
/// Antisymmetry in `(a, b)` is maintained by [`StructureTensor::set_pair`];
/// [`StructureTensor::from_entries`] accepts arbitrary data and must be
/// followed by [`StructureTensor::check_antisymmetric`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    nvars: usize,
    rank: usize,
    entries: Vec<Poly>,
}

impl StructureTensor {
    pub fn zero(nvars: usize, rank: usize) -> Self {
        StructureTensor {
            nvars,
            rank,
            entries: vec![Poly::zero(nvars); rank * rank * rank],
        }
    }

    /// Builds the tensor from `[e_a, e_b]` for `a < b`.
    pub fn from_brackets(nvars: usize, rank: usize, mut bracket: impl FnMut(usize, usize) -> SectionE) -> Self {
        let mut t = StructureTensor::zero(nvars, rank);
        for a in 0..rank {
            for b in a + 1..rank {
                t.set_pair(a, b, &bracket(a, b));
            }
        }
        t
    }

    /// Raw entries indexed `(c, a, b)`.
    pub fn from_entries(nvars: usize, rank: usize, mut entry: impl FnMut(usize, usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rank * rank * rank);
        for c in 0..rank {
            for a in 0..rank {
                for b in 0..rank {
                    entries.push(entry(c, a, b));
                }
            }
        }
        StructureTensor { nvars, rank, entries }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn idx(&self, c: usize, a: usize, b: usize) -> usize {
        (c * self.rank + a) * self.rank + b
    }

    pub fn get(&self, c: usize, a: usize, b: usize) -> &Poly {
        &self.entries[self.idx(c, a, b)]
    }

    pub fn set(&mut self, c: usize, a: usize, b: usize, p: Poly) {
        let i = self.idx(c, a, b);
        self.entries[i] = p;
    }

    /// Sets `[e_a, e_b] = s` and `[e_b, e_a] = −s`.
    pub fn set_pair(&mut self, a: usize, b: usize, s: &SectionE) {
        assert_eq!(s.rank(), self.rank);
        for c in 0..self.rank {
            self.set(c, a, b, s.get(c).clone());
            self.set(c, b, a, -s.get(c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn check_antisymmetric(&self) -> Result<()> {
        for c in 0..self.rank {
            for a in 0..self.rank {
                for b in a..self.rank {
                    let s = self.get(c, a, b) + self.get(c, b, a);
                    if !s.is_zero() {
                        return Err(Error::NotAntisymmetric {
                            what: "structure tensor",
                            detail: format!("entry ({}, {}, {}) plus its transpose is {s}", c + 1, a + 1, b + 1),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `[e_a, e_b]` as recorded in the tensor.
    pub fn basis_bracket(&self, a: usize, b: usize) -> SectionE {
        SectionE::new((0..self.rank).map(|c| self.get(c, a, b).clone()).collect())
    }

    /// The tensorial part `Ω(u, v) = Σ Ωᶜₐᵦ u_a v_b e_c`.
    pub fn apply(&self, u: &SectionE, v: &SectionE) -> SectionE {
        let n = self.nvars;
        SectionE::new(
            (0..self.rank)
                .map(|c| {
                    let mut acc = Poly::zero(n);
                    for a in 0..self.rank {
                        if u.get(a).is_zero() {
                            continue;
                        }
                        for b in 0..self.rank {
                            let e = self.get(c, a, b);
                            if !e.is_zero() {
                                acc += &(&(e * u.get(a)) * v.get(b));
                            }
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `Ω(u)` as an endomorphism: `(Ω(u))ᶜ_b = Σ_a Ωᶜₐᵦ u_a`.
    pub fn endo(&self, u: &SectionE) -> PolyMatrix {
        PolyMatrix::from_fn(self.nvars, self.rank, self.rank, |c, b| {
            let mut acc = Poly::zero(self.nvars);
            for a in 0..self.rank {
                acc += &(self.get(c, a, b) * u.get(a));
            }
            acc
        })
    }

    pub fn diff(&self, i: usize) -> Self {
        StructureTensor {
            nvars: self.nvars,
            rank: self.rank,
            entries: self.entries.iter().map(|p| p.diff(i)).collect(),
        }
    }
}
