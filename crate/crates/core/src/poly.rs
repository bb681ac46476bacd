//! Homogeneous polynomials with exact rational coefficients.
//!
//! Conventions used throughout:
//!
//! - variables are `X0..X{n}` with `X0` the homogenizing coordinate;
//! - terms are kept in a map ordered by graded lexicographic order
//!   (`X0 > X1 > ...`), and rendered descending;
//! - the vanishing order at a projective point `x` is computed by completing
//!   `x` to a basis and reading the largest exponent of the first variable
//!   after substitution; along a subspace it is the least total exponent of
//!   the complementary variables.

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix, QVec, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector, one entry per variable. Ordering is graded lex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), &self.0).cmp(&(other.degree(), &other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A homogeneous polynomial. The zero polynomial carries a declared degree so
/// that sums and differences stay well-typed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomoPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Rat>,
}

impl HomoPoly {
    pub fn zero(nvars: usize, degree: u32) -> HomoPoly {
        HomoPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> HomoPoly {
        let mut p = HomoPoly::zero(nvars, 0);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), c);
        }
        p
    }

    /// Degree-1 polynomial from a covector.
    pub fn linear(coeffs: &[Rat]) -> HomoPoly {
        let mut p = HomoPoly::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; coeffs.len()];
                e[i] = 1;
                p.terms.insert(Monomial(e), c.clone());
            }
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<HomoPoly>
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut p = HomoPoly::zero(nvars, degree);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch("monomial width".into()));
            }
            let m = Monomial(exps);
            if m.degree() != degree {
                return Err(Error::DimensionMismatch("inhomogeneous term".into()));
            }
            if c.is_zero() {
                continue;
            }
            let entry = p.terms.entry(m).or_insert_with(Rat::zero);
            *entry += c;
        }
        p.terms.retain(|_, c| !c.is_zero());
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch("eval point width".into()));
        }
        let mut acc = Rat::zero();
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

    pub fn add(&self, other: &HomoPoly) -> Result<HomoPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &HomoPoly) -> Result<HomoPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomoPoly {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, s: &Rat) -> HomoPoly {
        let mut out = HomoPoly::zero(self.nvars, self.degree);
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &HomoPoly) -> Result<HomoPoly> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch("mul variable count".into()));
        }
        let mut out = HomoPoly::zero(self.nvars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = Monomial(ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect());
                let entry = out.terms.entry(m).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Quotient of an exact division; errors when the divisor does not divide
    /// self. Zero divided by anything nonzero is zero.
    pub fn exact_divide(&self, divisor: &HomoPoly) -> Result<HomoPoly> {
        if self.nvars != divisor.nvars {
            return Err(Error::DimensionMismatch("divide variable count".into()));
        }
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(HomoPoly::zero(
                self.nvars,
                self.degree.saturating_sub(divisor.degree),
            ));
        }
        if self.degree < divisor.degree {
            return Err(Error::NotDivisible);
        }
        let qdeg = self.degree - divisor.degree;
        let (dm, dc) = divisor.leading().expect("nonzero divisor");
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quo = HomoPoly::zero(self.nvars, qdeg);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Err(Error::NotDivisible);
            }
            let qm = dm.quotient(rm);
            let qc = rc / &dc;
            let mut t = HomoPoly::zero(self.nvars, qdeg);
            t.terms.insert(qm, qc);
            rem = rem.sub(&t.mul(divisor)?)?;
            quo = quo.add(&t)?;
        }
        Ok(quo)
    }

    pub fn partial_derivative(&self, var: usize) -> Result<HomoPoly> {
        if var >= self.nvars {
            return Err(Error::IndexRange(format!("variable {var}")));
        }
        let mut out = HomoPoly::zero(self.nvars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.terms
                .insert(Monomial(exps), c * Rat::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Substitutes `X_i := sum_j m[i][j] * Y_j`; the result lives in `m.cols()`
    /// variables. Rows of `m` may be zero (the variable is killed).
    pub fn linear_substitute(&self, m: &QMatrix) -> Result<HomoPoly> {
        if m.rows() != self.nvars {
            return Err(Error::DimensionMismatch(
                "substitution matrix must have one row per variable".into(),
            ));
        }
        let new_vars = m.cols();
        let rows: Vec<HomoPoly> = (0..self.nvars)
            .map(|i| HomoPoly::linear(m.row(i)))
            .collect();
        // Powers of each row form, filled on demand.
        let mut powers: Vec<Vec<HomoPoly>> = rows
            .iter()
            .map(|r| vec![HomoPoly::constant(new_vars, Rat::one()), r.clone()])
            .collect();
        let mut out = HomoPoly::zero(new_vars, self.degree);
        for (mono, c) in &self.terms {
            let mut t = HomoPoly::constant(new_vars, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&rows[i])?;
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Exact substitution of `X_pivot := -(1/a_p) * sum_{i != pivot} a_i X_i`
    /// where `a = form`, dropping the pivot variable. Coefficients stay
    /// rational; nothing is rescaled.
    pub fn substitute_form(&self, form: &[Rat], pivot: usize) -> Result<HomoPoly> {
        if form.len() != self.nvars {
            return Err(Error::DimensionMismatch("form width".into()));
        }
        if pivot >= self.nvars || form[pivot].is_zero() {
            return Err(Error::InvalidPivot);
        }
        let mut m = QMatrix::zero(self.nvars, self.nvars - 1);
        for i in 0..self.nvars {
            let j_new = |j: usize| if j < pivot { j } else { j - 1 };
            if i == pivot {
                for j in 0..self.nvars {
                    if j != pivot {
                        m.set(i, j_new(j), -(&form[j] / &form[pivot]));
                    }
                }
            } else {
                m.set(i, j_new(i), Rat::one());
            }
        }
        self.linear_substitute(&m)
    }

    /// Substitution as in `substitute_form`, then denominators cleared by the
    /// lcm. Integer content is kept as-is.
    pub fn restrict_to_hyperplane(&self, form: &[Rat], pivot: usize) -> Result<HomoPoly> {
        let raw = self.substitute_form(form, pivot)?;
        Ok(raw.clear_denominators())
    }

    /// Multiplies by the lcm of the coefficient denominators.
    pub fn clear_denominators(&self) -> HomoPoly {
        let mut l = num::BigInt::one();
        for c in self.terms.values() {
            l = num::Integer::lcm(&l, c.denom());
        }
        self.scale(&Rat::from_integer(l))
    }

    /// Primitive integer coefficients with positive leading coefficient; the
    /// canonical representative of the polynomial up to scale.
    pub fn normalize(&self) -> HomoPoly {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: QVec = self.terms.values().cloned().collect();
        let prim = linalg::normalize_primitive(&coeffs).expect("nonzero polynomial");
        let scale = &prim[0] / &coeffs[0];
        let mut out = self.scale(&scale);
        if out.leading().expect("nonzero").1.is_negative() {
            out = out.neg();
        }
        out
    }

    /// Vanishing order at a projective point: the least total order of a
    /// nonvanishing derivative, computed by completing `x` to a coordinate
    /// frame. `f` must be nonzero.
    pub fn vanishing_order_at_point(&self, x: &[Rat]) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch("point width".into()));
        }
        let m = completion_matrix(&[x.to_vec()], self.nvars)?;
        let g = self.linear_substitute(&m)?;
        let max_e0 = g
            .terms
            .keys()
            .map(|mono| mono.0[0])
            .max()
            .expect("substitution by an invertible matrix keeps f nonzero");
        Ok(self.degree - max_e0)
    }

    /// Vanishing order along the projective subspace spanned by `span`: the
    /// least total degree in the complementary variables after adapting
    /// coordinates. `f` must be nonzero.
    pub fn vanishing_order_along(&self, span: &[QVec]) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let m = completion_matrix(span, self.nvars)?;
        let g = self.linear_substitute(&m)?;
        let k = span.len();
        let mu = g
            .terms
            .keys()
            .map(|mono| mono.0[k..].iter().sum::<u32>())
            .min()
            .expect("substitution by an invertible matrix keeps f nonzero");
        Ok(mu)
    }

    fn check_compatible(&self, other: &HomoPoly) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "{} vars deg {} vs {} vars deg {}",
                self.nvars, self.degree, other.nvars, other.degree
            )));
        }
        Ok(())
    }
}

/// Invertible matrix whose first columns are the given independent vectors,
/// completed greedily by standard basis vectors in index order.
pub fn completion_matrix(lead: &[QVec], n: usize) -> Result<QMatrix> {
    let mut cols: Vec<QVec> = Vec::new();
    for v in lead {
        if v.len() != n {
            return Err(Error::DimensionMismatch("completion vector width".into()));
        }
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        cols.push(v.clone());
    }
    let rank_of = |cols: &Vec<QVec>| -> usize {
        QMatrix::from_rows(cols.clone())
            .expect("equal widths")
            .rank()
    };
    if rank_of(&cols) != cols.len() {
        return Err(Error::InvalidInput("spanning vectors are dependent".into()));
    }
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        cols.push(e);
        if rank_of(&cols) < cols.len() {
            cols.pop();
        }
    }
    let mut m = QMatrix::zero(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    Ok(m)
}

/// Smallest order of a nonvanishing partial derivative at `x`, found by brute
/// force over derivative multi-indices. Slow; used to cross-check the matrix
/// route.
pub fn order_by_derivatives(f: &HomoPoly, x: &[Rat]) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for k in 0..=f.degree() {
        for beta in exponents_of_degree(f.nvars(), k) {
            let mut g = f.clone();
            for (var, &e) in beta.iter().enumerate() {
                for _ in 0..e {
                    g = g.partial_derivative(var)?;
                }
            }
            if !g.eval(x)?.is_zero() {
                return Ok(k);
            }
        }
    }
    Ok(f.degree() + 1)
}

/// All exponent vectors of the given total degree, in ascending lex order.
pub fn exponents_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(vec![]);
        }
        return out;
    }
    go(0, degree, &mut cur, &mut out);
    out
}

impl fmt::Display for HomoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let a = c.abs();
            let is_const = m.0.iter().all(|&e| e == 0);
            let mut wrote_coeff = false;
            if !a.is_one() || is_const {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
                wrote_coeff = true;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_coeff {
                    write!(f, "*")?;
                }
                wrote_coeff = true;
                write!(f, "X{i}")?;
                if e >= 2 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parses the rendering produced by `Display`: signed terms, `*`-separated
/// factors, `X<i>` variables, `^` powers, integer or `p/q` coefficients.
pub fn parse_poly(text: &str, nvars: usize) -> Result<HomoPoly> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::PolyParse("empty input".into()));
    }
    if s == "0" {
        return Ok(HomoPoly::zero(nvars, 0));
    }
    // Split into signed chunks.
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign_neg = false;
    let mut started = false;
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            chunks.push((sign_neg, std::mem::take(&mut cur)));
            sign_neg = ch == '-';
        } else if ch == '-' && i == 0 {
            sign_neg = true;
        } else {
            cur.push(ch);
        }
        started = true;
    }
    if started {
        chunks.push((sign_neg, cur));
    }
    let mut terms: Vec<(Vec<u32>, Rat)> = Vec::new();
    let mut degree: Option<u32> = None;
    for (neg, chunk) in chunks {
        if chunk.is_empty() {
            return Err(Error::PolyParse("dangling sign".into()));
        }
        // Accept omitted separators, as in 3X0X1^2: put one before each X.
        let mut sep = String::with_capacity(chunk.len());
        for (i, ch) in chunk.chars().enumerate() {
            if (ch == 'X' || ch == 'x') && i > 0 && !sep.ends_with('*') {
                sep.push('*');
            }
            sep.push(ch);
        }
        let mut coeff = Rat::one();
        let mut exps = vec![0u32; nvars];
        for factor in sep.split('*') {
            if factor.is_empty() {
                return Err(Error::PolyParse("empty factor".into()));
            }
            if let Some(rest) = factor.strip_prefix(['X', 'x']) {
                let (idx_s, exp_s) = match rest.split_once('^') {
                    Some((a, b)) => (a, Some(b)),
                    None => (rest, None),
                };
                let idx: usize = idx_s
                    .parse()
                    .map_err(|_| Error::PolyParse(format!("bad variable index in {factor:?}")))?;
                if idx >= nvars {
                    return Err(Error::PolyParse(format!(
                        "variable X{idx} out of range (nvars = {nvars})"
                    )));
                }
                let e: u32 = match exp_s {
                    Some(t) => t
                        .parse()
                        .map_err(|_| Error::PolyParse(format!("bad exponent in {factor:?}")))?,
                    None => 1,
                };
                exps[idx] += e;
            } else {
                let c: Rat = factor
                    .parse()
                    .map_err(|_| Error::PolyParse(format!("bad coefficient {factor:?}")))?;
                coeff *= c;
            }
        }
        if neg {
            coeff = -coeff;
        }
        let d: u32 = exps.iter().sum();
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => {
                return Err(Error::PolyParse("terms of unequal degree".into()))
            }
            _ => {}
        }
        terms.push((exps, coeff));
    }
    HomoPoly::from_terms(nvars, degree.unwrap_or(0), terms)
}
