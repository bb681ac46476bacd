//! Rational convex polytopes in the affine chart `X0 = 1` of projective
//! space, carried as vertex list + facet inequality list + incidence grid.
//!
//! A facet form `l = (a_0, ..., a_n)` means `a_0 + a_1 x_1 + ... + a_n x_n >= 0`
//! on the polytope; forms are primitive integer vectors whose sign carries the
//! orientation. Hull and vertex enumeration are brute force over subsets,
//! which is exact and entirely adequate at the intended scale.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, QMatrix, QVec, Rat};
use itertools::Itertools;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A linear form on homogeneous coordinates, stored primitive integer with
/// the sign given at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: QVec,
}

impl LinearForm {
    pub fn new(coeffs: QVec) -> Result<LinearForm> {
        Ok(LinearForm {
            coeffs: linalg::normalize_primitive(&coeffs)?,
        })
    }

    pub fn from_i64(coeffs: &[i64]) -> LinearForm {
        LinearForm::new(linalg::qvec(coeffs)).unwrap()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficients of the non-homogenizing variables.
    pub fn linear_part(&self) -> &[Rat] {
        &self.coeffs[1..]
    }

    pub fn eval_homog(&self, x: &[Rat]) -> Rat {
        dot(&self.coeffs, x)
    }

    /// Value at an affine point (chart `X0 = 1`).
    pub fn eval_affine(&self, v: &[Rat]) -> Rat {
        let mut acc = self.coeffs[0].clone();
        for (c, x) in self.coeffs[1..].iter().zip(v) {
            acc += c * x;
        }
        acc
    }

    /// Sign-insensitive canonical coefficients, for hyperplane comparison.
    pub fn canonical(&self) -> QVec {
        linalg::normalize_canonical(&self.coeffs).expect("form is nonzero")
    }

    pub fn same_hyperplane(&self, other: &LinearForm) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn negated(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// A point of projective space, stored in canonical primitive form with the
/// first nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: QVec,
}

impl ProjectivePoint {
    pub fn new(coords: QVec) -> Result<ProjectivePoint> {
        Ok(ProjectivePoint {
            coords: linalg::normalize_canonical(&coords)?,
        })
    }

    pub fn from_affine(v: &[Rat]) -> ProjectivePoint {
        let mut coords = vec![Rat::one()];
        coords.extend_from_slice(v);
        ProjectivePoint::new(coords).expect("homogenized point is nonzero")
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_affine(&self) -> bool {
        !self.coords[0].is_zero()
    }

    pub fn to_affine(&self) -> Option<QVec> {
        if !self.is_affine() {
            return None;
        }
        Some(
            self.coords[1..]
                .iter()
                .map(|c| c / &self.coords[0])
                .collect(),
        )
    }
}

/// A projective linear subspace cut out by facet forms, with an explicit
/// spanning point set. `defining_forms.len() + spanning_points.len() = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubspace {
    pub defining_forms: Vec<LinearForm>,
    pub spanning_points: Vec<ProjectivePoint>,
}

impl LinearSubspace {
    pub fn from_forms(forms: Vec<LinearForm>, n: usize) -> Result<LinearSubspace> {
        let m = QMatrix::from_rows(forms.iter().map(|f| f.coeffs().to_vec()).collect())?;
        if m.cols() != n + 1 {
            return Err(Error::DimensionMismatch("form width".into()));
        }
        if m.rank() != forms.len() {
            return Err(Error::InvalidInput("defining forms are dependent".into()));
        }
        let spanning = m
            .kernel_basis()
            .into_iter()
            .map(ProjectivePoint::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearSubspace {
            defining_forms: forms,
            spanning_points: spanning,
        })
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.spanning_points.len() - 1
    }

    pub fn codim(&self) -> usize {
        self.defining_forms.len()
    }

    pub fn spanning_coords(&self) -> Vec<QVec> {
        self.spanning_points
            .iter()
            .map(|p| p.coords().to_vec())
            .collect()
    }
}

/// Rank of the affine configuration: number of affinely independent points.
/// The affine dimension of the span is this minus one.
pub fn affine_rank(points: &[QVec]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let rows: Vec<QVec> = points
        .iter()
        .map(|p| {
            let mut r = vec![Rat::one()];
            r.extend_from_slice(p);
            r
        })
        .collect();
    QMatrix::from_rows(rows).expect("equal widths").rank()
}

/// Facet inequalities of the convex hull of a full-dimensional point set,
/// oriented nonnegative on the hull, sorted by coefficient vector.
pub fn hull_facets(dim: usize, points: &[QVec]) -> Result<Vec<LinearForm>> {
    let n = dim;
    if n == 0 {
        return Ok(Vec::new());
    }
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::DimensionMismatch("point width".into()));
    }
    if affine_rank(points) != n + 1 {
        return Err(Error::NotFullDimensional);
    }
    let mut found: BTreeMap<QVec, LinearForm> = BTreeMap::new();
    for subset in (0..points.len()).combinations(n) {
        let rows: Vec<QVec> = subset
            .iter()
            .map(|&i| {
                let mut r = vec![Rat::one()];
                r.extend_from_slice(&points[i]);
                r
            })
            .collect();
        let kernel = QMatrix::from_rows(rows)?.kernel_basis();
        if kernel.len() != 1 {
            continue;
        }
        let form = LinearForm::new(kernel.into_iter().next().unwrap())?;
        let mut has_pos = false;
        let mut has_neg = false;
        for p in points {
            let s = form.eval_affine(p);
            if s.is_positive() {
                has_pos = true;
            } else if s.is_negative() {
                has_neg = true;
            }
            if has_pos && has_neg {
                break;
            }
        }
        if has_pos && has_neg {
            continue;
        }
        let oriented = if has_neg { form.negated() } else { form };
        found.entry(oriented.canonical()).or_insert(oriented);
    }
    let mut facets: Vec<LinearForm> = found.into_values().collect();
    facets.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    Ok(facets)
}

/// Vertices of the bounded feasible region of an irredundant inequality
/// system, sorted lexicographically. Errors when the region is empty,
/// unbounded, or not full-dimensional.
pub fn vertex_enumeration(dim: usize, facets: &[LinearForm]) -> Result<Vec<QVec>> {
    let n = dim;
    if n == 0 || facets.len() < n + 1 {
        return Err(Error::UnboundedOrEmpty);
    }
    if facets.iter().any(|f| f.coeffs().len() != n + 1) {
        return Err(Error::DimensionMismatch("form width".into()));
    }
    for (i, f) in facets.iter().enumerate() {
        for g in &facets[i + 1..] {
            if f.same_hyperplane(g) {
                return Err(Error::InvalidInput(format!(
                    "inequalities {i} and another cut the same hyperplane"
                )));
            }
        }
    }
    let lin = QMatrix::from_rows(facets.iter().map(|f| f.linear_part().to_vec()).collect())?;
    let mut verts: Vec<QVec> = Vec::new();
    for subset in (0..facets.len()).combinations(n) {
        let a = QMatrix::from_rows(
            subset
                .iter()
                .map(|&i| facets[i].linear_part().to_vec())
                .collect(),
        )?;
        if a.rank() != n {
            continue;
        }
        let b: QVec = subset
            .iter()
            .map(|&i| -facets[i].coeffs()[0].clone())
            .collect();
        let x = a.solve(&b)?.expect("full-rank square system");
        if facets.iter().all(|f| !f.eval_affine(&x).is_negative()) && !verts.contains(&x) {
            verts.push(x);
        }
    }
    if verts.is_empty() {
        return Err(Error::UnboundedOrEmpty);
    }
    // Bounded iff the recession cone {y : Ay >= 0} is trivial: no line
    // (kernel) and no extreme ray (kernel of a rank n-1 subsystem that the
    // whole system signs consistently).
    if !lin.kernel_basis().is_empty() {
        return Err(Error::UnboundedOrEmpty);
    }
    for subset in (0..facets.len()).combinations(n - 1) {
        let m = if subset.is_empty() {
            QMatrix::zero(0, n)
        } else {
            QMatrix::from_rows(
                subset
                    .iter()
                    .map(|&i| facets[i].linear_part().to_vec())
                    .collect(),
            )?
        };
        let kernel = m.kernel_basis();
        if kernel.len() != 1 {
            continue;
        }
        let y = &kernel[0];
        let image = lin.mul_vec(y)?;
        if image.iter().all(|s| !s.is_negative()) || image.iter().all(|s| !s.is_positive()) {
            return Err(Error::UnboundedOrEmpty);
        }
    }
    if affine_rank(&verts) != n + 1 {
        return Err(Error::NotFullDimensional);
    }
    verts.sort();
    Ok(verts)
}

/// A full-dimensional bounded rational polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<QVec>,
    facets: Vec<LinearForm>,
    /// `incidence[v][f]` is true when vertex `v` lies on facet `f`.
    incidence: Vec<Vec<bool>>,
}

impl Polytope {
    /// The 0-dimensional polytope: a single point with no facets.
    pub fn point() -> Polytope {
        Polytope {
            dim: 0,
            vertices: vec![vec![]],
            facets: vec![],
            incidence: vec![vec![]],
        }
    }

    /// Builds from a vertex list; facets are completed by hull search.
    /// Every input point must be an extreme point of the hull.
    pub fn from_vertices(dim: usize, vertices: Vec<QVec>) -> Result<Polytope> {
        if dim == 0 {
            if vertices.len() == 1 && vertices[0].is_empty() {
                return Ok(Polytope::point());
            }
            return Err(Error::InvalidInput("a 0-polytope is a single point".into()));
        }
        let mut verts = vertices;
        verts.sort();
        for pair in verts.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidInput("duplicate vertex".into()));
            }
        }
        let facets = hull_facets(dim, &verts)?;
        let p = Polytope::from_parts(dim, verts, facets)?;
        Ok(p)
    }

    /// Builds from an irredundant inequality list; vertices are completed by
    /// enumeration. Facet order follows the input.
    pub fn from_inequalities(dim: usize, facets: Vec<LinearForm>) -> Result<Polytope> {
        let verts = vertex_enumeration(dim, &facets)?;
        let hull = hull_facets(dim, &verts)?;
        for (i, f) in facets.iter().enumerate() {
            if !hull.iter().any(|h| h.same_hyperplane(f)) {
                return Err(Error::RedundantInequality(i));
            }
        }
        if hull.len() != facets.len() {
            return Err(Error::Internal(
                "hull facet missing from the inequality list".into(),
            ));
        }
        Polytope::from_parts(dim, verts, facets)
    }

    /// Builds from both representations, validating them against each other.
    /// Input orders are preserved.
    pub fn from_both(dim: usize, vertices: Vec<QVec>, facets: Vec<LinearForm>) -> Result<Polytope> {
        let check = Polytope::from_vertices(dim, vertices.clone())?;
        if check.facets.len() != facets.len() {
            return Err(Error::InvalidInput(
                "facet list does not match the hull of the vertex list".into(),
            ));
        }
        for f in &facets {
            if !check.facets.iter().any(|h| h.same_hyperplane(f)) {
                return Err(Error::InvalidInput(
                    "facet list does not match the hull of the vertex list".into(),
                ));
            }
        }
        Polytope::from_parts(dim, vertices, facets)
    }

    /// Assembles and validates; orders are kept exactly as given.
    pub fn from_parts(
        dim: usize,
        vertices: Vec<QVec>,
        facets: Vec<LinearForm>,
    ) -> Result<Polytope> {
        let n = dim;
        if n == 0 {
            if vertices.len() == 1 && vertices[0].is_empty() && facets.is_empty() {
                return Ok(Polytope::point());
            }
            return Err(Error::InvalidInput("a 0-polytope is a single point".into()));
        }
        if vertices.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch("vertex width".into()));
        }
        if facets.iter().any(|f| f.coeffs().len() != n + 1) {
            return Err(Error::DimensionMismatch("facet form width".into()));
        }
        if affine_rank(&vertices) != n + 1 {
            return Err(Error::NotFullDimensional);
        }
        if facets.len() < n + 1 {
            return Err(Error::InvalidInput("too few facets".into()));
        }
        for (i, f) in facets.iter().enumerate() {
            for g in &facets[i + 1..] {
                if f.same_hyperplane(g) {
                    return Err(Error::InvalidInput("duplicate facet hyperplane".into()));
                }
            }
        }
        let mut incidence = vec![vec![false; facets.len()]; vertices.len()];
        for (vi, v) in vertices.iter().enumerate() {
            for (fi, f) in facets.iter().enumerate() {
                let s = f.eval_affine(v);
                if s.is_negative() {
                    return Err(Error::InvalidInput(format!(
                        "vertex {vi} violates inequality {fi}"
                    )));
                }
                incidence[vi][fi] = s.is_zero();
            }
        }
        for (fi, _) in facets.iter().enumerate() {
            let on: Vec<QVec> = vertices
                .iter()
                .enumerate()
                .filter(|(vi, _)| incidence[*vi][fi])
                .map(|(_, v)| v.clone())
                .collect();
            if on.len() < n || affine_rank(&on) != n {
                return Err(Error::RedundantInequality(fi));
            }
        }
        for (vi, _) in vertices.iter().enumerate() {
            let rows: Vec<QVec> = facets
                .iter()
                .enumerate()
                .filter(|(fi, _)| incidence[vi][*fi])
                .map(|(_, f)| f.coeffs().to_vec())
                .collect();
            if rows.is_empty() || QMatrix::from_rows(rows).expect("equal widths").rank() != n {
                return Err(Error::InvalidInput(format!(
                    "point {vi} is not a vertex of the region"
                )));
            }
        }
        Ok(Polytope {
            dim: n,
            vertices,
            facets,
            incidence,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[LinearForm] {
        &self.facets
    }

    pub fn is_incident(&self, vertex: usize, facet: usize) -> bool {
        self.incidence[vertex][facet]
    }

    /// Vertex centroid; strictly interior for any valid polytope.
    pub fn interior_point(&self) -> QVec {
        if self.dim == 0 {
            return vec![];
        }
        let count = Rat::from_integer(self.vertices.len().into());
        (0..self.dim)
            .map(|i| {
                let mut acc = Rat::zero();
                for v in &self.vertices {
                    acc += &v[i];
                }
                acc / &count
            })
            .collect()
    }

    pub fn contains_strictly(&self, z: &[Rat]) -> bool {
        z.len() == self.dim && self.facets.iter().all(|f| f.eval_affine(z).is_positive())
    }

    /// Polar dual with respect to a strictly interior point `z`: the dual of
    /// the translate `P - z`. Dual vertices follow this polytope's facet
    /// order, dual facets its vertex order, and incidence transposes.
    pub fn polar_dual(&self, z: &[Rat]) -> Result<Polytope> {
        if z.len() != self.dim || self.dim == 0 {
            return Err(Error::DimensionMismatch("interior point width".into()));
        }
        if !self.contains_strictly(z) {
            return Err(Error::NotInterior);
        }
        let mut dual_vertices = Vec::new();
        for f in &self.facets {
            let c = f.eval_affine(z);
            dual_vertices.push(f.linear_part().iter().map(|a| a / &c).collect::<QVec>());
        }
        let mut dual_facets = Vec::new();
        for v in &self.vertices {
            let mut coeffs = vec![Rat::one()];
            coeffs.extend(v.iter().zip(z).map(|(a, b)| a - b));
            dual_facets.push(LinearForm::new(coeffs)?);
        }
        let dual = Polytope::from_parts(self.dim, dual_vertices, dual_facets)?;
        for (vi, _) in self.vertices.iter().enumerate() {
            for (fi, _) in self.facets.iter().enumerate() {
                debug_assert_eq!(dual.incidence[fi][vi], self.incidence[vi][fi]);
            }
        }
        Ok(dual)
    }

    /// Facets meeting facet `h` in a codimension-2 face: those sharing at
    /// least `dim - 1` affinely independent vertices with it.
    pub fn incident_facets(&self, h: usize) -> Result<Vec<usize>> {
        if h >= self.facets.len() {
            return Err(Error::IndexRange(format!("facet {h}")));
        }
        let n = self.dim;
        let mut out = Vec::new();
        if n < 2 {
            return Ok(out);
        }
        for g in 0..self.facets.len() {
            if g == h {
                continue;
            }
            let common: Vec<QVec> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|(vi, _)| self.incidence[*vi][h] && self.incidence[*vi][g])
                .map(|(_, v)| v.clone())
                .collect();
            if affine_rank(&common) == n - 1 {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// The facet as a polytope one dimension down, eliminating the pivot
    /// variable through the facet equation. Returns the polytope together
    /// with the parent indices of the facets it inherits (those incident to
    /// `h`), in matching order.
    pub fn facet_polytope(&self, h: usize, pivot: usize) -> Result<(Polytope, Vec<usize>)> {
        if h >= self.facets.len() {
            return Err(Error::IndexRange(format!("facet {h}")));
        }
        let n = self.dim;
        let form = self.facets[h].coeffs();
        if pivot == 0 || pivot > n || form[pivot].is_zero() {
            return Err(Error::InvalidPivot);
        }
        let on_facet: Vec<usize> = (0..self.vertices.len())
            .filter(|&vi| self.incidence[vi][h])
            .collect();
        if n == 1 {
            return Ok((Polytope::point(), vec![]));
        }
        let new_vertices: Vec<QVec> = on_facet
            .iter()
            .map(|&vi| {
                let v = &self.vertices[vi];
                v.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != pivot - 1)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let incident = self.incident_facets(h)?;
        let mut new_facets = Vec::new();
        for &g in &incident {
            let gc = self.facets[g].coeffs();
            let mut r: QVec = Vec::with_capacity(n);
            for j in 0..=n {
                if j == pivot {
                    continue;
                }
                r.push(&gc[j] - &(&gc[pivot] * &form[j] / &form[pivot]));
            }
            new_facets.push(LinearForm::new(r)?);
        }
        let p = Polytope::from_parts(n - 1, new_vertices, new_facets)?;
        Ok((p, incident))
    }

    /// Vertex set and dimension of the face `P` cuts out on the subspace;
    /// dimension is -1 when the face is empty. Every defining form must be a
    /// facet hyperplane.
    pub fn face_of_subspace(&self, l: &LinearSubspace) -> Result<(Vec<usize>, i64)> {
        let mut facet_ids = Vec::new();
        for f in &l.defining_forms {
            match self.facets.iter().position(|g| g.same_hyperplane(f)) {
                Some(i) => facet_ids.push(i),
                None => return Err(Error::NotFacetForm),
            }
        }
        let members: Vec<usize> = (0..self.vertices.len())
            .filter(|&vi| facet_ids.iter().all(|&fi| self.incidence[vi][fi]))
            .collect();
        let pts: Vec<QVec> = members
            .iter()
            .map(|&vi| self.vertices[vi].clone())
            .collect();
        let dim = affine_rank(&pts) as i64 - 1;
        Ok((members, dim))
    }

    /// Image under an invertible projective map `m` acting on homogeneous
    /// coordinates. The image must avoid the hyperplane at infinity.
    pub fn apply_projective_map(&self, m: &QMatrix) -> Result<Polytope> {
        let n = self.dim;
        if m.rows() != n + 1 || m.cols() != n + 1 {
            return Err(Error::DimensionMismatch("map must be (n+1)x(n+1)".into()));
        }
        let minv = m.inverse()?;
        let mut images: Vec<QVec> = Vec::new();
        for v in &self.vertices {
            let mut hom = vec![Rat::one()];
            hom.extend_from_slice(v);
            images.push(m.mul_vec(&hom)?);
        }
        let all_pos = images.iter().all(|u| u[0].is_positive());
        let all_neg = images.iter().all(|u| u[0].is_negative());
        if !all_pos && !all_neg {
            return Err(Error::VertexAtInfinity);
        }
        if all_neg {
            for u in &mut images {
                for x in u.iter_mut() {
                    let t = -&*x;
                    *x = t;
                }
            }
        }
        let new_vertices: Vec<QVec> = images
            .iter()
            .map(|u| u[1..].iter().map(|x| x / &u[0]).collect())
            .collect();
        let mut new_facets = Vec::new();
        for f in &self.facets {
            let a = f.coeffs();
            let coeffs: QVec = (0..=n)
                .map(|j| {
                    let mut acc = Rat::zero();
                    for (i, ai) in a.iter().enumerate() {
                        acc += ai * minv.get(i, j);
                    }
                    acc
                })
                .collect();
            new_facets.push(LinearForm::new(coeffs)?);
        }
        Polytope::from_parts(n, new_vertices, new_facets)
    }
}
