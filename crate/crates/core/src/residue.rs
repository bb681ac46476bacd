//! Rational forms attached to polytopes and their iterated residues along
//! facet hyperplanes.
//!
//! The canonical form of a polytope is its adjoint divided by the product of
//! its facet forms. Taking the residue along a facet reproduces, up to a
//! rational scalar, the canonical form of the facet polytope; iterating all
//! the way down to points yields terminal values of equal magnitude.

use crate::adjoint::warren_adjoint;
use crate::error::{Error, Result};
use crate::linalg::{QVec, Rat};
use crate::poly::HomoPoly;
use crate::polytope::{LinearForm, Polytope};
use num::{One, Signed, Zero};
use std::fmt;

/// A rational form `numerator / (product of linear denominators)` of total
/// degree `-nvars`, so `denominator.len() = numerator.degree() + nvars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeForm {
    nvars: usize,
    numerator: HomoPoly,
    denominator: Vec<HomoPoly>,
}

fn linear_coeffs(p: &HomoPoly) -> Result<QVec> {
    if p.degree() != 1 || p.is_zero() {
        return Err(Error::InvalidInput("expected a nonzero linear form".into()));
    }
    let mut out = vec![Rat::zero(); p.nvars()];
    for (m, c) in p.terms() {
        let var = m.0.iter().position(|&e| e == 1).expect("degree-1 monomial");
        out[var] = c.clone();
    }
    Ok(out)
}

/// Whether two nonzero polynomials differ by a rational scalar.
pub fn proportional(a: &HomoPoly, b: &HomoPoly) -> bool {
    !a.is_zero() && !b.is_zero() && a.normalize() == b.normalize()
}

fn scalar_ratio(a: &HomoPoly, b: &HomoPoly) -> Result<Rat> {
    if !proportional(a, b) {
        return Err(Error::InvalidInput(
            "polynomials are not proportional".into(),
        ));
    }
    let (ma, ca) = a.leading().expect("nonzero");
    let (_, cb) = b.leading().expect("nonzero");
    debug_assert_eq!(Some(ma), b.leading().map(|(m, _)| m));
    Ok(ca / cb)
}

impl PolytopeForm {
    pub fn new(
        nvars: usize,
        numerator: HomoPoly,
        denominator: Vec<HomoPoly>,
    ) -> Result<PolytopeForm> {
        if numerator.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if numerator.nvars() != nvars {
            return Err(Error::DimensionMismatch("numerator variable count".into()));
        }
        if denominator.len() != numerator.degree() as usize + nvars {
            return Err(Error::InvalidInput(
                "form must have total degree minus the variable count".into(),
            ));
        }
        for d in &denominator {
            if d.nvars() != nvars {
                return Err(Error::DimensionMismatch(
                    "denominator variable count".into(),
                ));
            }
            linear_coeffs(d)?;
            if numerator.exact_divide(d).is_ok() {
                return Err(Error::InvalidInput(
                    "numerator shares a linear factor with the denominator".into(),
                ));
            }
        }
        Ok(PolytopeForm {
            nvars,
            numerator,
            denominator,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numerator(&self) -> &HomoPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &[HomoPoly] {
        &self.denominator
    }

    /// The residue value of a form on a single projective point: with
    /// numerator `c X0^k` and denominators `a_i X0`, this is `c` over the
    /// product of the `a_i`.
    pub fn value(&self) -> Result<Rat> {
        if self.nvars != 1 {
            return Err(Error::InvalidInput("value needs a point form".into()));
        }
        let (_, c) = self.numerator.leading().expect("nonzero numerator");
        let mut acc = c.clone();
        for d in &self.denominator {
            let a = linear_coeffs(d)?;
            acc /= &a[0];
        }
        Ok(acc)
    }
}

impl fmt::Display for PolytopeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        write!(f, " / ")?;
        let parts: Vec<String> = self.denominator.iter().map(|d| format!("({d})")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// The canonical form of a polytope: adjoint over the product of the facet
/// forms, denominators in facet order.
pub fn canonical_form(p: &Polytope) -> Result<PolytopeForm> {
    let adj = warren_adjoint(p)?;
    let denominator: Vec<HomoPoly> = p
        .facets()
        .iter()
        .map(|f| HomoPoly::linear(f.coeffs()))
        .collect();
    PolytopeForm::new(p.dim() + 1, adj, denominator)
}

/// The conventional pivot for eliminating a denominator: the highest-index
/// variable appearing in it. Iterated residues taken under this convention
/// always land in one common variable set, so they stay comparable.
pub fn default_pivot(form: &PolytopeForm, h: usize) -> Result<usize> {
    let d = form
        .denominator
        .get(h)
        .ok_or_else(|| Error::IndexRange(format!("denominator {h}")))?;
    let c = linear_coeffs(d)?;
    (1..c.len())
        .rev()
        .find(|&i| !c[i].is_zero())
        .ok_or(Error::InvalidPivot)
}

/// Residue of `form` along its `h`-th denominator, which must cut the `h`-th
/// facet of `p`. The `pivot` variable (its coefficient in that denominator
/// must be nonzero) is eliminated; the result lives on the facet polytope
/// and is returned together with it.
///
/// Denominators not incident to the chosen facet must divide the restricted
/// numerator exactly; incident ones restrict to the new denominators, kept
/// in ascending parent order to match the facet polytope's facet order.
pub fn residue_along(
    p: &Polytope,
    form: &PolytopeForm,
    h: usize,
    pivot: usize,
) -> Result<(Polytope, PolytopeForm)> {
    let n = p.dim();
    if form.nvars != n + 1 {
        return Err(Error::DimensionMismatch("form does not live on p".into()));
    }
    if form.denominator.len() != p.facets().len() {
        return Err(Error::InvalidInput(
            "one denominator per facet is required".into(),
        ));
    }
    for (d, f) in form.denominator.iter().zip(p.facets()) {
        let lf = LinearForm::new(linear_coeffs(d)?)?;
        if !lf.same_hyperplane(f) {
            return Err(Error::NotFacetForm);
        }
    }
    if h >= form.denominator.len() {
        return Err(Error::IndexRange(format!("denominator {h}")));
    }
    let c = linear_coeffs(&form.denominator[h])?;
    if pivot == 0 || pivot >= c.len() || c[pivot].is_zero() {
        return Err(Error::InvalidPivot);
    }
    let restricted = form.numerator.substitute_form(&c, pivot)?;
    if restricted.is_zero() {
        return Err(Error::NumeratorVanishes);
    }
    let sign = if (n - pivot).is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    };
    let mut numerator = restricted.scale(&(sign / &c[pivot]));
    if n == 1 {
        // Point residue: nothing cancels, every other denominator restricts
        // to a multiple of the single remaining variable.
        let mut denominator = Vec::new();
        for (g, d) in form.denominator.iter().enumerate() {
            if g != h {
                denominator.push(d.substitute_form(&c, pivot)?);
            }
        }
        let out = PolytopeForm::new(1, numerator, denominator)?;
        return Ok((Polytope::point(), out));
    }
    let (sub, incident) = p.facet_polytope(h, pivot)?;
    let mut denominator = Vec::new();
    for (g, d) in form.denominator.iter().enumerate() {
        if g == h {
            continue;
        }
        let r = d.substitute_form(&c, pivot)?;
        if incident.contains(&g) {
            denominator.push(r);
        } else {
            numerator = numerator.exact_divide(&r)?;
        }
    }
    let out = PolytopeForm::new(n, numerator, denominator)?;
    Ok((sub, out))
}

/// Scalar ratio `a / b` between two forms that agree up to a rational
/// constant: numerators proportional and denominators pairwise proportional
/// in matching order.
pub fn form_ratio(a: &PolytopeForm, b: &PolytopeForm) -> Result<Rat> {
    if a.nvars != b.nvars || a.denominator.len() != b.denominator.len() {
        return Err(Error::DimensionMismatch("forms are not comparable".into()));
    }
    let mut ratio = scalar_ratio(&a.numerator, &b.numerator)?;
    for (da, db) in a.denominator.iter().zip(&b.denominator) {
        ratio *= scalar_ratio(db, da)?;
    }
    Ok(ratio)
}

/// Walks the whole residue tree of the canonical form: at every inner node
/// the residue must be proportional to the canonical form of the facet
/// polytope, and the terminal point values must all share one magnitude.
/// Returns the terminal values, indexed by complete descent chains.
pub fn recursion_check(p: &Polytope) -> Result<Vec<Rat>> {
    let form = canonical_form(p)?;
    let mut terminals = Vec::new();
    walk(p, &form, &mut terminals)?;
    let first = terminals
        .first()
        .ok_or_else(|| Error::Internal("no terminal values".into()))?
        .abs();
    if first.is_zero() {
        return Err(Error::Internal("terminal value vanished".into()));
    }
    for t in &terminals {
        if t.abs() != first {
            return Err(Error::Internal(
                "terminal values differ in magnitude".into(),
            ));
        }
    }
    Ok(terminals)
}

fn walk(p: &Polytope, form: &PolytopeForm, terminals: &mut Vec<Rat>) -> Result<()> {
    if p.dim() == 1 {
        // Segment: the two endpoint residues must cancel exactly.
        let (_, res0) = residue_along(p, form, 0, default_pivot(form, 0)?)?;
        let (_, res1) = residue_along(p, form, 1, default_pivot(form, 1)?)?;
        let (v0, v1) = (res0.value()?, res1.value()?);
        if v0.is_zero() || &v0 + &v1 != Rat::zero() {
            return Err(Error::Internal("endpoint residues do not cancel".into()));
        }
        terminals.push(v0);
        terminals.push(v1);
        return Ok(());
    }
    for h in 0..p.facets().len() {
        let (sub, res) = residue_along(p, form, h, default_pivot(form, h)?)?;
        let canonical = canonical_form(&sub)?;
        form_ratio(&res, &canonical)?;
        walk(&sub, &res, terminals)?;
    }
    Ok(())
}

/// Ratio between the two iterated residues along a pair of facets meeting in
/// codimension 2, taken in both orders. Antisymmetry of the residue makes
/// this -1.
pub fn double_residue_ratio(p: &Polytope, g: usize, h: usize) -> Result<Rat> {
    let form = canonical_form(p)?;
    let pos = |list: &[usize], x: usize| -> Result<usize> {
        list.iter()
            .position(|&i| i == x)
            .ok_or(Error::NonIncidentFacets)
    };
    let (sub_h, res_h) = residue_along(p, &form, h, default_pivot(&form, h)?)?;
    let g_in_h = pos(&p.incident_facets(h)?, g)?;
    let (_, res_hg) = residue_along(&sub_h, &res_h, g_in_h, default_pivot(&res_h, g_in_h)?)?;
    let (sub_g, res_g) = residue_along(p, &form, g, default_pivot(&form, g)?)?;
    let h_in_g = pos(&p.incident_facets(g)?, h)?;
    let (_, res_gh) = residue_along(&sub_g, &res_g, h_in_g, default_pivot(&res_g, h_in_g)?)?;
    form_ratio(&res_hg, &res_gh)
}
