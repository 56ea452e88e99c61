//! Exact Fox calculus over `ℤ[t, t⁻¹]`: Alexander matrices of knot-group
//! presentations, their determinants and the Alexander polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::knotlang::{GroupPresentation, Letter};

/// Laurent polynomial in `t` with integer coefficients. Zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c·t^e`
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, e);
        p
    }

    /// Sum of `(coefficient, exponent)` pairs.
    pub fn from_terms(terms: &[(i64, i32)]) -> Self {
        let mut p = Self::zero();
        for &(c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    fn add_term(&mut self, c: i64, e: i32) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert(0);
        *slot = slot.checked_add(c).expect("Laurent coefficient overflow");
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    /// `(coefficient, exponent)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i32)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (c, e))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// `p(t⁻¹)`
    pub fn mirror(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Exact value at an integer; `t = ±1` are the cases of interest.
    pub fn eval_int(&self, t: i64) -> i128 {
        assert!(t == 1 || t == -1 || self.min_degree().is_none_or(|m| m >= 0), "negative powers of {t} are not integral");
        self.coeffs
            .iter()
            .map(|(&e, &c)| c as i128 * (t as i128).pow(e.unsigned_abs()))
            .sum()
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        self.coeffs.iter().map(|(&e, &c)| t.powi(e) * c as f64).sum()
    }

    /// Sum of absolute values of the coefficients.
    pub fn coefficient_mass(&self) -> f64 {
        self.coeffs.values().map(|c| c.unsigned_abs() as f64).sum()
    }

    /// Exact quotient `self / d`; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (dmin, dmax) = (d.min_degree()?, d.max_degree()?);
        let lead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some(rmax) = rem.max_degree() {
            let rmin = rem.min_degree().expect("non-empty");
            if rmax - rmin < dmax - dmin {
                return None;
            }
            let c = rem.coeff(rmax);
            if c % lead != 0 {
                return None;
            }
            let term = Self::monomial(c / lead, rmax - dmax);
            rem = &rem - &(&term * d);
            q = &q + &term;
        }
        Some(q)
    }

    /// Whether `self = ±t^k · other` for some `k`.
    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        match (self.min_degree(), other.min_degree()) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let s = self.shift(-a);
                let o = other.shift(-b);
                s == o || s == -&o
            }
            _ => false,
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (c, e) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ea) in self.terms() {
            for (b, eb) in rhs.terms() {
                out.add_term(a.checked_mul(b).expect("Laurent coefficient overflow"), ea + eb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending powers, e.g. `-t^-1 + 3 - t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, e)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Dense matrix of Laurent polynomials, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn delete_row(&self, row: usize) -> Self {
        let entries = (0..self.rows)
            .filter(|&r| r != row)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        Self {
            rows: self.rows - 1,
            cols: self.cols,
            entries,
        }
    }

    pub fn column_sums(&self) -> Vec<LaurentPoly> {
        (0..self.cols)
            .map(|c| (0..self.rows).fold(LaurentPoly::zero(), |acc, r| &acc + self.get(r, c)))
            .collect()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination; every division
/// is exact in `ℤ[t, t⁻¹]`.
pub fn det_laurent(m: &LaurentMatrix) -> Result<LaurentPoly> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut a: Vec<Vec<LaurentPoly>> = (0..n).map(|r| (0..n).map(|c| m.get(r, c).clone()).collect()).collect();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(LaurentPoly::zero());
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Abelianized Fox derivative `∂w/∂x_j` with every generator sent to `t`.
fn fox_derivative(w: &[Letter], j: usize, pres: &GroupPresentation) -> LaurentPoly {
    let deg = pres.abelianization();
    let mut prefix = 0i32;
    let mut out = LaurentPoly::zero();
    for l in w {
        if l.gen == j {
            if l.exp > 0 {
                out.add_term(1, prefix);
            } else {
                // ∂(x⁻¹)/∂x = −x⁻¹
                out.add_term(-1, prefix - deg[j]);
            }
        }
        prefix += deg[l.gen] * l.exp as i32;
    }
    out
}

/// The `n × (n−1)` Alexander matrix: entry `(j, i)` is `∂rᵢ/∂xⱼ`.
pub fn fox_matrix(pres: &GroupPresentation) -> LaurentMatrix {
    let n = pres.n_generators();
    let mut m = LaurentMatrix::zeros(n, pres.relators().len());
    for (i, r) in pres.relators().iter().enumerate() {
        for j in 0..n {
            m.set(j, i, fox_derivative(r, j, pres));
        }
    }
    m
}

/// Representative of `p` up to `±t^k` with `p(t) = p(t⁻¹)` and `p(1) > 0`.
/// Polynomials of odd span are centred with the extra power on the positive
/// side.
pub fn normalize_symmetric(p: &LaurentPoly) -> LaurentPoly {
    let (Some(lo), Some(hi)) = (p.min_degree(), p.max_degree()) else {
        return LaurentPoly::zero();
    };
    let centred = p.shift(-(lo + hi).div_euclid(2));
    let at_one = centred.eval_int(1);
    let lead_negative = centred.coeff(centred.max_degree().expect("non-zero")) < 0;
    if at_one < 0 || (at_one == 0 && lead_negative) {
        -&centred
    } else {
        centred
    }
}

/// Alexander polynomial: determinant of the Alexander matrix with its last
/// row deleted, in symmetric normalization.
pub fn alexander_poly(pres: &GroupPresentation) -> Result<LaurentPoly> {
    alexander_poly_deleting(pres, pres.n_generators() - 1)
}

/// As [`alexander_poly`], deleting row `row` instead of the last one.
pub fn alexander_poly_deleting(pres: &GroupPresentation, row: usize) -> Result<LaurentPoly> {
    let f = fox_matrix(pres);
    if row >= f.rows() {
        return Err(Error::Shape(format!("row {row} out of range for {} rows", f.rows())));
    }
    Ok(normalize_symmetric(&det_laurent(&f.delete_row(row))?))
}

/// Raw (unnormalized) minor of the Alexander matrix with row `row` deleted.
pub fn alexander_minor(pres: &GroupPresentation, row: usize) -> Result<LaurentPoly> {
    let f = fox_matrix(pres);
    if row >= f.rows() {
        return Err(Error::Shape(format!("row {row} out of range for {} rows", f.rows())));
    }
    det_laurent(&f.delete_row(row))
}

/// Both `|p(1)|` and `|p(−1)|` are odd.
pub fn odd_at_pm1(p: &LaurentPoly) -> bool {
    p.eval_int(1) % 2 != 0 && p.eval_int(-1) % 2 != 0
}

/// The nonvanishing condition `Δ(a⁻²) ≠ 0`, tested against a zero threshold
/// of `1e-12` times the coefficient mass.
pub fn abelian_window_ok(p: &LaurentPoly, a: Complex64) -> bool {
    assert!(a != Complex64::new(0.0, 0.0), "eigenvalue must be non-zero");
    let t = a.powi(-2);
    p.eval_complex(t).norm() > 1e-12 * p.coefficient_mass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotlang::{parse_braid, presentation_from_braid};

    fn pres(word: &str) -> GroupPresentation {
        presentation_from_braid(&parse_braid(word).unwrap()).unwrap()
    }

    fn fig8() -> LaurentPoly {
        LaurentPoly::from_terms(&[(-1, -1), (3, 0), (-1, 1)])
    }

    fn trefoil() -> LaurentPoly {
        LaurentPoly::from_terms(&[(1, -1), (-1, 0), (1, 1)])
    }

    #[test]
    fn det_identity_and_diagonal() {
        assert_eq!(det_laurent(&LaurentMatrix::identity(3)).unwrap(), LaurentPoly::one());
        let m = LaurentMatrix::from_rows(vec![
            vec![LaurentPoly::monomial(1, 1), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), LaurentPoly::monomial(1, -1)],
        ])
        .unwrap();
        assert_eq!(det_laurent(&m).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn det_two_by_two() {
        let t = LaurentPoly::monomial(1, 1);
        let one = LaurentPoly::one();
        let m = LaurentMatrix::from_rows(vec![vec![t.clone(), one.clone()], vec![one, t]]).unwrap();
        assert_eq!(det_laurent(&m).unwrap(), LaurentPoly::from_terms(&[(1, 2), (-1, 0)]));
    }

    #[test]
    fn det_needs_pivot_swap() {
        let one = LaurentPoly::one();
        let z = LaurentPoly::zero();
        let m = LaurentMatrix::from_rows(vec![vec![z.clone(), one.clone()], vec![one, z]]).unwrap();
        assert_eq!(det_laurent(&m).unwrap(), LaurentPoly::monomial(-1, 0));
    }

    #[test]
    fn det_rejects_non_square() {
        assert!(matches!(det_laurent(&LaurentMatrix::zeros(2, 3)), Err(Error::Shape(_))));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        // 3x3 cofactor oracle
        let p = |t: &[(i64, i32)]| LaurentPoly::from_terms(t);
        let rows = vec![
            vec![p(&[(1, 1), (-2, 0)]), p(&[(3, -1)]), p(&[(1, 0), (1, 2)])],
            vec![p(&[(0, 0)]), p(&[(1, 1), (1, -1)]), p(&[(-1, 0)])],
            vec![p(&[(2, 0)]), p(&[(1, 3)]), p(&[(4, 0), (-1, 1)])],
        ];
        let m = LaurentMatrix::from_rows(rows.clone()).unwrap();
        let minor = |a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly, d: &LaurentPoly| &(a * d) - &(b * c);
        let r = &rows;
        let cof = &(&(&r[0][0] * &minor(&r[1][1], &r[1][2], &r[2][1], &r[2][2]))
            - &(&r[0][1] * &minor(&r[1][0], &r[1][2], &r[2][0], &r[2][2])))
            + &(&r[0][2] * &minor(&r[1][0], &r[1][1], &r[2][0], &r[2][1]));
        assert_eq!(det_laurent(&m).unwrap(), cof);
    }

    #[test]
    fn trefoil_columns_sum_to_zero() {
        let f = fox_matrix(&pres("s1 s1 s1"));
        assert!(f.column_sums().iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn unknot_minor_is_a_unit() {
        let p = pres("s1 s2");
        for row in 0..3 {
            let m = alexander_minor(&p, row).unwrap();
            assert!(m.equal_up_to_unit(&LaurentPoly::one()), "{m}");
        }
        assert_eq!(alexander_poly(&p).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn standard_polynomials() {
        assert_eq!(alexander_poly(&pres("s1 s1 s1")).unwrap(), trefoil());
        assert_eq!(alexander_poly(&pres("s1 s2^-1 s1 s2^-1")).unwrap(), fig8());
        let raw = alexander_minor(&pres("s1 s2^-1 s1 s2^-1"), 0).unwrap();
        assert!(raw.equal_up_to_unit(&fig8()));
    }

    #[test]
    fn parity_at_plus_minus_one() {
        assert_eq!(fig8().eval_int(1), 1);
        assert_eq!(fig8().eval_int(-1), 5);
        assert!(odd_at_pm1(&fig8()));
        assert_eq!(trefoil().eval_int(-1).abs(), 3);
        assert!(odd_at_pm1(&trefoil()));
        assert!(!odd_at_pm1(&LaurentPoly::from_terms(&[(1, 1), (-1, -1)])));
    }

    #[test]
    fn abelian_window() {
        assert!(abelian_window_ok(&fig8(), Complex64::new(1.0, 0.0)));
        // a⁻² = (3+√5)/2 is a root of t² − 3t + 1
        let root = (3.0 + 5f64.sqrt()) / 2.0;
        let a = Complex64::new(root.powf(-0.5), 0.0);
        assert!(!abelian_window_ok(&fig8(), a));
        assert!(abelian_window_ok(&LaurentPoly::one(), Complex64::new(0.3, 2.0)));
    }

    #[test]
    fn display_is_ascending() {
        assert_eq!(fig8().to_string(), "-t^-1 + 3 - t");
        assert_eq!(LaurentPoly::from_terms(&[(2, 3), (-5, -2)]).to_string(), "-5*t^-2 + 2*t^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_terms(&[(1, 2), (-1, 0)]);
        let b = LaurentPoly::from_terms(&[(1, 1), (1, 0)]);
        assert_eq!(a.exact_div(&b).unwrap(), LaurentPoly::from_terms(&[(1, 1), (-1, 0)]));
        assert!(LaurentPoly::from_terms(&[(1, 2), (1, 0)]).exact_div(&b).is_none());
    }
}
