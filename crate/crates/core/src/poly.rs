//! Exact multivariate polynomials over the rationals.
//!
//! A [`Poly`] is the coordinate model of a smooth function on a patch: a
//! sparse map from exponent vectors to nonzero [`Rational`] coefficients,
//! kept in graded-lexicographic order so that structural equality is
//! mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A coordinate patch `M ⊂ ℝⁿ` carrying the trivial bundle `E = M × ℝᵏ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Patch {
    var_names: Vec<String>,
    rank_e: usize,
}

impl Patch {
    pub fn new(var_names: Vec<String>, rank_e: usize) -> Result<Self> {
        if rank_e == 0 {
            return Err(Error::InvalidPatch("fiber rank must be at least 1".into()));
        }
        for (i, name) in var_names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidPatch(format!("`{name}` is not a valid variable name")));
            }
            if var_names[..i].contains(name) {
                return Err(Error::InvalidPatch(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Patch { var_names, rank_e })
    }

    /// Patch with coordinates named `x1..xn`.
    pub fn standard(dim_m: usize, rank_e: usize) -> Result<Self> {
        Patch::new((1..=dim_m).map(|i| format!("x{i}")).collect(), rank_e)
    }

    pub fn dim_m(&self) -> usize {
        self.var_names.len()
    }

    pub fn rank_e(&self) -> usize {
        self.rank_e
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Polynomial in `nvars` variables with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn integer(nvars: usize, c: i64) -> Self {
        Poly::constant(nvars, int(c))
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Poly::monomial(nvars, Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), nvars, "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_patch(&self, other: &Poly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::PatchMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arith(&self, op: ArithOp, other: &Poly) -> Result<Poly> {
        self.check_patch(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other, false),
            ArithOp::Sub => self.add_unchecked(other, true),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `∂/∂x_i` with a 0-based index, reporting out-of-range indices.
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.nvars,
            });
        }
        Ok(self.diff(i))
    }

    /// `∂/∂x_i` with a 0-based index. Panics when `i` is out of range.
    pub fn diff(&self, i: usize) -> Poly {
        assert!(i < self.nvars, "coordinate index {i} out of range");
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * int(e as i64));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::shape("evaluate", self.nvars, point.len()));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Renders with the given coordinate names; the output re-parses to `self`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                let name = self
                    .names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(&[]).fmt(f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.arith($op, rhs).expect("polynomial operands on different patches")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, ArithOp::Add);
forward_binop!(Sub, sub, ArithOp::Sub);
forward_binop!(Mul, mul, ArithOp::Mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.check_patch(rhs).expect("polynomial operands on different patches");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.check_patch(rhs).expect("polynomial operands on different patches");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Dense row-major matrix of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            nvars,
            rows,
            cols,
            entries: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        PolyMatrix::from_fn(nvars, n, n, |i, j| {
            if i == j {
                Poly::one(nvars)
            } else {
                Poly::zero(nvars)
            }
        })
    }

    pub fn from_fn(nvars: usize, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                assert_eq!(p.nvars, nvars, "matrix entry on a different patch");
                entries.push(p);
            }
        }
        PolyMatrix {
            nvars,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::shape("matrix row", ncols, row.len()));
            }
            for p in row {
                if p.nvars != nvars {
                    return Err(Error::PatchMismatch {
                        left: nvars,
                        right: p.nvars,
                    });
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            nvars,
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        assert!(i < self.rows && j < self.cols, "matrix index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert!(i < self.rows && j < self.cols, "matrix index ({i},{j}) out of range");
        assert_eq!(p.nvars, self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl FnMut(&Poly) -> Poly) -> Self {
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        PolyMatrix::from_fn(self.nvars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, f: &Poly) -> Self {
        self.map(|p| p * f)
    }

    pub fn diff(&self, i: usize) -> Self {
        self.map(|p| p.diff(i))
    }

    pub fn checked_add(&self, other: &PolyMatrix) -> Result<Self> {
        self.same_shape(other, "matrix sum")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &PolyMatrix) -> Result<Self> {
        self.same_shape(other, "matrix difference")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::PatchMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.cols != other.rows {
            return Err(Error::shape(
                "matrix product",
                format!("{} rows", self.cols),
                format!("{} rows", other.rows),
            ));
        }
        Ok(PolyMatrix::from_fn(self.nvars, self.rows, other.cols, |i, j| {
            let mut acc = Poly::zero(self.nvars);
            for l in 0..self.cols {
                acc += &(self.get(i, l) * other.get(l, j));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(self.nvars);
                for (j, x) in v.iter().enumerate() {
                    acc += &(self.get(i, j) * x);
                }
                acc
            })
            .collect()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).evaluate(point)).collect())
            .collect()
    }

    fn same_shape(&self, other: &PolyMatrix, context: &'static str) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::PatchMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.shape() != other.shape() {
            return Err(Error::shape(
                context,
                format!("{:?}", self.shape()),
                format!("{:?}", other.shape()),
            ));
        }
        Ok(())
    }

    fn zip_with(&self, other: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_add(rhs).expect("matrix sum")
    }
}

impl Sub<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_sub(rhs).expect("matrix difference")
    }
}

impl Mul<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        self.map(|p| -p)
    }
}

/// Determinant of a square rational matrix by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn rational_determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn difference_of_squares() {
        let one = Poly::one(2);
        let p = (&x(0) + &one) * (&x(0) - &one);
        assert_eq!(p, &x(0).pow(2) - &one);
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn additive_identity_and_monomial_product() {
        let p = &x(0) * &x(1);
        assert_eq!(&p + &Poly::zero(2), p);
        assert_eq!(&p * &x(1), &x(0) * &x(1).pow(2));
    }

    #[test]
    fn partial_derivatives() {
        let p = &x(0).pow(2) * &x(1);
        assert_eq!(p.partial(0).unwrap(), (&x(0) * &x(1)).scale(&int(2)));
        assert!(x(0).partial(1).unwrap().is_zero());
        assert!(Poly::constant(2, rat(5, 3)).partial(0).unwrap().is_zero());
        assert_eq!(
            x(0).partial(2),
            Err(Error::IndexOutOfRange { index: 2, dim: 2 })
        );
    }

    #[test]
    fn evaluation() {
        let p = &x(0).pow(2) + &x(1);
        assert_eq!(p.evaluate(&[int(2), int(3)]).unwrap(), int(7));
        assert_eq!(Poly::zero(2).evaluate(&[int(9), rat(1, 7)]).unwrap(), int(0));
        let half_x = Poly::var(1, 0).scale(&rat(1, 2));
        assert_eq!(half_x.evaluate(&[rat(1, 3)]).unwrap(), rat(1, 6));
        assert!(p.evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn patch_mismatch_is_an_input_error() {
        let err = Poly::var(2, 0).arith(ArithOp::Add, &Poly::var(3, 0)).unwrap_err();
        assert_eq!(err, Error::PatchMismatch { left: 2, right: 3 });
    }

    #[test]
    fn graded_lex_printing() {
        let names = vec!["x1".to_string(), "x2".to_string()];
        let p = &(&x(0).pow(2) * &x(1)) - &Poly::constant(2, rat(3, 2));
        assert_eq!(p.to_string_with(&names), "x1^2*x2 - 3/2");
        let q = &x(1) - &x(0).pow(3).scale(&int(2));
        assert_eq!(q.to_string_with(&names), "-2*x1^3 + x2");
    }

    #[test]
    fn point_base_polys_are_constants() {
        let c = Poly::constant(0, rat(2, 3));
        assert_eq!((&c * &c).as_constant(), Some(rat(4, 9)));
        assert_eq!(c.evaluate(&[]).unwrap(), rat(2, 3));
    }

    #[test]
    fn determinant() {
        let m = vec![vec![int(0), int(1)], vec![int(-1), int(0)]];
        assert_eq!(rational_determinant(m), int(1));
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rational_determinant(singular), int(0));
    }

    #[test]
    fn patch_validation() {
        assert!(Patch::new(vec!["x".into(), "x".into()], 1).is_err());
        assert!(Patch::new(vec!["x".into()], 0).is_err());
        assert!(Patch::new(vec!["1x".into()], 1).is_err());
        let p = Patch::standard(0, 3).unwrap();
        assert_eq!((p.dim_m(), p.rank_e()), (0, 3));
    }
}
