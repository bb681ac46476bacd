//! The adjoint polynomial of a polytope, by two independent routes: a
//! weighted product formula summed over a pulling triangulation of the polar
//! dual, and linear interpolation against the prescribed vanishing orders at
//! the points of the facet arrangement.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVec, Rat};
use crate::poly::{exponents_of_degree, HomoPoly};
use crate::polytope::Polytope;
use num::{One, Signed, Zero};

/// Sorted vertex indices of one simplex in a triangulation.
pub type Simplex = Vec<usize>;

fn choose_pivot(coeffs: &[Rat]) -> Result<usize> {
    (1..coeffs.len())
        .rev()
        .find(|&i| !coeffs[i].is_zero())
        .ok_or(Error::InvalidPivot)
}

/// Absolute determinant of the edge matrix of a simplex spanned by `n + 1`
/// vertices of `q`.
pub fn simplex_det(q: &Polytope, sigma: &[usize]) -> Result<Rat> {
    let n = q.dim();
    if sigma.len() != n + 1 {
        return Err(Error::DimensionMismatch("simplex vertex count".into()));
    }
    let base = &q.vertices()[sigma[0]];
    let rows: Vec<QVec> = sigma[1..]
        .iter()
        .map(|&i| {
            q.vertices()[i]
                .iter()
                .zip(base)
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    Ok(QMatrix::from_rows(rows)?.determinant()?.abs())
}

/// Pulling triangulation: cone the first vertex in `order` over the pulled
/// triangulations of the facets that miss it. `order` lists all vertex
/// indices by precedence. Simplices come back sorted.
pub fn pulling_triangulation(q: &Polytope, order: &[usize]) -> Result<Vec<Simplex>> {
    let nv = q.vertices().len();
    let mut check: Vec<usize> = order.to_vec();
    check.sort();
    if check != (0..nv).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(
            "order must be a permutation of the vertex indices".into(),
        ));
    }
    let mut rank = vec![0usize; nv];
    for (pos, &vi) in order.iter().enumerate() {
        rank[vi] = pos;
    }
    let map: Vec<usize> = (0..nv).collect();
    let mut simplices = triangulate(q, &map, &rank)?;
    simplices.sort();
    Ok(simplices)
}

fn triangulate(p: &Polytope, map: &[usize], rank: &[usize]) -> Result<Vec<Simplex>> {
    let n = p.dim();
    if n == 0 {
        return Ok(vec![vec![map[0]]]);
    }
    if n == 1 {
        let mut s: Simplex = map.to_vec();
        s.sort();
        return Ok(vec![s]);
    }
    let v_local = (0..p.vertices().len())
        .min_by_key(|&i| rank[map[i]])
        .expect("polytope has vertices");
    let v_orig = map[v_local];
    let mut out = Vec::new();
    for h in 0..p.facets().len() {
        if p.is_incident(v_local, h) {
            continue;
        }
        let pivot = choose_pivot(p.facets()[h].coeffs())?;
        let (sub, _) = p.facet_polytope(h, pivot)?;
        let sub_map: Vec<usize> = (0..p.vertices().len())
            .filter(|&vi| p.is_incident(vi, h))
            .map(|vi| map[vi])
            .collect();
        for tau in triangulate(&sub, &sub_map, rank)? {
            let mut sigma = tau;
            sigma.push(v_orig);
            sigma.sort();
            out.push(sigma);
        }
    }
    Ok(out)
}

/// Whether a vertex index set is a face of the polytope: the vertices lying
/// on every facet that contains the whole set must be the set itself.
pub fn is_face(q: &Polytope, vertex_set: &[usize]) -> Result<bool> {
    let nv = q.vertices().len();
    if vertex_set.iter().any(|&v| v >= nv) {
        return Err(Error::IndexRange("vertex index".into()));
    }
    let common: Vec<usize> = (0..q.facets().len())
        .filter(|&fi| vertex_set.iter().all(|&vi| q.is_incident(vi, fi)))
        .collect();
    let recovered: Vec<usize> = (0..nv)
        .filter(|&vi| common.iter().all(|&fi| q.is_incident(vi, fi)))
        .collect();
    let mut sorted = vertex_set.to_vec();
    sorted.sort();
    sorted.dedup();
    Ok(recovered == sorted)
}

/// A vertex order that pulls `v` before everything else; requires `v` to be
/// a member of the given face. Restricting a pulling triangulation to that
/// face then reproduces the face's own pulled triangulation.
pub fn face_constrained_order(q: &Polytope, face: &[usize], v: usize) -> Result<Vec<usize>> {
    if !face.contains(&v) {
        return Err(Error::InvalidInput("vertex must belong to the face".into()));
    }
    if !is_face(q, face)? {
        return Err(Error::InvalidInput("vertex set is not a face".into()));
    }
    let mut order = vec![v];
    order.extend((0..q.vertices().len()).filter(|&i| i != v));
    Ok(order)
}

/// Adjoint by the triangulation route with default choices: the vertex
/// centroid as the dual's base point and lexicographic vertex order for
/// pulling.
pub fn warren_adjoint(p: &Polytope) -> Result<HomoPoly> {
    let z = p.interior_point();
    let q = p.polar_dual(&z)?;
    let mut order: Vec<usize> = (0..q.vertices().len()).collect();
    order.sort_by(|&a, &b| q.vertices()[a].cmp(&q.vertices()[b]));
    warren_adjoint_from(p, &z, &order)
}

/// Adjoint by the triangulation route. The polar dual is taken at the
/// interior point `z`; `order` ranks the dual's vertices (one per facet of
/// `p`) for the pulling triangulation. The result does not depend on either
/// choice, which the tests exercise.
pub fn warren_adjoint_from(p: &Polytope, z: &[Rat], order: &[usize]) -> Result<HomoPoly> {
    let n = p.dim();
    if n == 0 {
        return Err(Error::InvalidInput("adjoint needs dimension >= 1".into()));
    }
    let q = p.polar_dual(z)?;
    let nv = q.vertices().len();
    let deg = (nv - n - 1) as u32;
    let tri = pulling_triangulation(&q, order)?;
    let mut total = HomoPoly::zero(n + 1, deg);
    for sigma in &tri {
        let det = simplex_det(&q, sigma)?;
        let mut term = HomoPoly::constant(n + 1, det);
        for (w, vert) in q.vertices().iter().enumerate() {
            if sigma.contains(&w) {
                continue;
            }
            let mut coeffs = vec![Rat::one()];
            coeffs.extend_from_slice(vert);
            term = term.mul(&HomoPoly::linear(&coeffs))?;
        }
        total = total.add(&term)?;
    }
    if total.is_zero() {
        return Err(Error::Internal("triangulation sum vanished".into()));
    }
    // The sum is the adjoint of the translate P - z; undo the translation.
    let mut m = QMatrix::identity(n + 1);
    for (i, zi) in z.iter().enumerate() {
        m.set(i + 1, 0, -zi.clone());
    }
    Ok(total.linear_substitute(&m)?.normalize())
}

fn derivative_coeff(alpha: &[u32], beta: &[u32], x: &[Rat]) -> Rat {
    let mut c = Rat::one();
    for i in 0..alpha.len() {
        if beta[i] > alpha[i] {
            return Rat::zero();
        }
        for k in 0..beta[i] {
            c *= Rat::from_integer((alpha[i] - k).into());
        }
        for _ in 0..(alpha[i] - beta[i]) {
            c *= &x[i];
        }
    }
    c
}

/// Adjoint by interpolation: the unique degree `d - n - 1` form vanishing to
/// at least the prescribed order at every point of the arrangement's point
/// residual. Errors with the kernel dimension when the linear system does
/// not pin the polynomial down to a line.
pub fn interpolation_adjoint(p: &Polytope) -> Result<HomoPoly> {
    let n = p.dim();
    if n == 0 {
        return Err(Error::InvalidInput("adjoint needs dimension >= 1".into()));
    }
    let deg = (p.facets().len() - n - 1) as u32;
    let arr = Arrangement::new(p);
    let residual = arr.point_residual()?;
    let monos: Vec<Vec<u32>> = {
        let mut m = exponents_of_degree(n + 1, deg);
        m.reverse();
        m
    };
    let mut rows: Vec<QVec> = Vec::new();
    for flat in &residual {
        let k = flat.order as u32;
        if k == 0 {
            continue;
        }
        let x = flat.point().expect("point residual flat").coords();
        for db in 0..k {
            for beta in exponents_of_degree(n + 1, db) {
                rows.push(
                    monos
                        .iter()
                        .map(|alpha| derivative_coeff(alpha, &beta, x))
                        .collect(),
                );
            }
        }
    }
    let m = if rows.is_empty() {
        QMatrix::zero(0, monos.len())
    } else {
        QMatrix::from_rows(rows)?
    };
    let kernel = m.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::KernelDimension(kernel.len()));
    }
    let coeffs = &kernel[0];
    let poly = HomoPoly::from_terms(
        n + 1,
        deg,
        monos
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.clone(), c.clone())),
    )?;
    Ok(poly.normalize())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjointMethod {
    Warren,
    Interpolation,
    /// Run both routes and insist they agree.
    Both,
}

pub fn adjoint(p: &Polytope, method: AdjointMethod) -> Result<HomoPoly> {
    match method {
        AdjointMethod::Warren => warren_adjoint(p),
        AdjointMethod::Interpolation => interpolation_adjoint(p),
        AdjointMethod::Both => {
            let a = warren_adjoint(p)?;
            let b = interpolation_adjoint(p)?;
            if a != b {
                return Err(Error::RouteDisagreement);
            }
            Ok(a)
        }
    }
}

/// One flat of the arrangement with the prescribed order and the actual
/// vanishing order of a given polynomial along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRow {
    pub members: Vec<usize>,
    pub rank: usize,
    pub nullity: usize,
    pub face_dim: i64,
    pub order: usize,
    pub mu: u32,
    pub satisfied: bool,
}

/// Checks `adj` against every flat of the arrangement: the vanishing order
/// along each flat must be at least the prescribed one.
pub fn verify_orders(p: &Polytope, adj: &HomoPoly) -> Result<Vec<OrderRow>> {
    let arr = Arrangement::new(p);
    let mut out = Vec::new();
    for level in arr.flats()? {
        for flat in level {
            let span = flat.subspace.spanning_coords();
            let mu = adj.vanishing_order_along(&span)?;
            out.push(OrderRow {
                members: flat.members.clone(),
                rank: flat.rank,
                nullity: flat.nullity,
                face_dim: flat.face_dim,
                order: flat.order,
                mu,
                satisfied: mu as usize >= flat.order,
            });
        }
    }
    Ok(out)
}
