//! The intersection lattice of a polytope's facet hyperplane arrangement,
//! with the vanishing order prescribed at each flat.
//!
//! A flat is a closed set of facet indices: every facet hyperplane containing
//! the common intersection subspace belongs to it. The prescribed order at a
//! flat is its nullity, plus one when the subspace does not meet the polytope
//! in a face of the subspace's own dimension.

use crate::error::{Error, Result};
use crate::linalg::{dot, QMatrix};
use crate::polytope::{LinearSubspace, Polytope, ProjectivePoint};
use num::Zero;
use std::collections::BTreeSet;

/// One flat of the arrangement together with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatData {
    /// Sorted facet indices; closed under taking the common subspace.
    pub members: Vec<usize>,
    /// The common intersection subspace.
    pub subspace: LinearSubspace,
    pub rank: usize,
    /// `members.len() - rank`.
    pub nullity: usize,
    /// Dimension of the face the subspace cuts on the polytope, -1 if empty.
    pub face_dim: i64,
    /// Prescribed vanishing order.
    pub order: usize,
}

impl FlatData {
    /// The intersection point, for rank-n flats.
    pub fn point(&self) -> Option<&ProjectivePoint> {
        if self.subspace.spanning_points.len() == 1 {
            Some(&self.subspace.spanning_points[0])
        } else {
            None
        }
    }
}

/// Facet hyperplane arrangement of a fixed polytope.
pub struct Arrangement<'p> {
    polytope: &'p Polytope,
}

impl<'p> Arrangement<'p> {
    pub fn new(polytope: &'p Polytope) -> Arrangement<'p> {
        Arrangement { polytope }
    }

    fn covector_matrix(&self, members: &[usize]) -> Result<QMatrix> {
        let facets = self.polytope.facets();
        let mut rows = Vec::with_capacity(members.len());
        for &i in members {
            let f = facets
                .get(i)
                .ok_or_else(|| Error::IndexRange(format!("facet {i}")))?;
            rows.push(f.coeffs().to_vec());
        }
        if rows.is_empty() {
            return Ok(QMatrix::zero(0, self.polytope.dim() + 1));
        }
        QMatrix::from_rows(rows)
    }

    /// Matroid rank of a facet subset: rank of its covector matrix.
    pub fn rank_of(&self, members: &[usize]) -> Result<usize> {
        Ok(self.covector_matrix(members)?.rank())
    }

    /// Smallest flat containing the subset: all facets whose hyperplane
    /// contains the common intersection subspace. Sorted.
    pub fn closure(&self, members: &[usize]) -> Result<Vec<usize>> {
        let kernel = self.covector_matrix(members)?.kernel_basis();
        let mut out = Vec::new();
        for (i, f) in self.polytope.facets().iter().enumerate() {
            if kernel.iter().all(|x| dot(f.coeffs(), x).is_zero()) {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Full data for the flat generated by a facet subset.
    pub fn flat(&self, members: &[usize]) -> Result<FlatData> {
        let members = self.closure(members)?;
        let rank = self.rank_of(&members)?;
        let n = self.polytope.dim();
        if rank > n {
            return Err(Error::InvalidInput(
                "facet subset has empty intersection".into(),
            ));
        }
        let facets = self.polytope.facets();
        // A maximal independent subset of the members defines the subspace.
        let mut chosen = Vec::new();
        let mut chosen_idx = Vec::new();
        for &i in &members {
            let mut trial = chosen_idx.clone();
            trial.push(i);
            if self.rank_of(&trial)? > chosen.len() {
                chosen.push(facets[i].clone());
                chosen_idx = trial;
            }
        }
        let subspace = LinearSubspace::from_forms(chosen, n)?;
        let (_, face_dim) = self.polytope.face_of_subspace(&subspace)?;
        let nullity = members.len() - rank;
        let subspace_dim = (n - rank) as i64;
        let order = nullity + usize::from(face_dim != subspace_dim);
        Ok(FlatData {
            members,
            subspace,
            rank,
            nullity,
            face_dim,
            order,
        })
    }

    /// All flats grouped by rank: element `r - 1` holds the rank-`r` flats,
    /// for `r` from 1 to the polytope dimension. Each level is sorted by
    /// member list.
    pub fn flats(&self) -> Result<Vec<Vec<FlatData>>> {
        let n = self.polytope.dim();
        let d = self.polytope.facets().len();
        let mut levels: Vec<Vec<FlatData>> = Vec::new();
        let mut frontier: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..d {
            frontier.insert(self.closure(&[i])?);
        }
        for _rank in 1..=n {
            let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut level = Vec::new();
            for members in &frontier {
                let flat = self.flat(members)?;
                for i in 0..d {
                    if !flat.members.contains(&i) && flat.rank < n {
                        let mut gen = flat.members.clone();
                        gen.push(i);
                        next.insert(self.closure(&gen)?);
                    }
                }
                level.push(flat);
            }
            levels.push(level);
            frontier = next;
        }
        Ok(levels)
    }

    /// The rank-n flats: all points where n or more facet hyperplanes meet,
    /// sorted by canonical point coordinates.
    pub fn point_residual(&self) -> Result<Vec<FlatData>> {
        let n = self.polytope.dim();
        let mut level = self.flats()?.pop().unwrap_or_default();
        debug_assert!(level.iter().all(|f| f.rank == n));
        level.sort_by(|a, b| {
            a.point()
                .expect("rank-n flat is a point")
                .cmp(b.point().expect("rank-n flat is a point"))
        });
        Ok(level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{qvec, QVec};

    fn cube() -> Polytope {
        let verts = [-1i64, 1]
            .iter()
            .flat_map(|&a| {
                [-1i64, 1]
                    .iter()
                    .flat_map(move |&b| [-1i64, 1].iter().map(move |&c| qvec(&[a, b, c])))
            })
            .collect();
        Polytope::from_vertices(3, verts).unwrap()
    }

    fn octahedron() -> Polytope {
        let mut verts = Vec::new();
        for i in 0..3 {
            for s in [-1i64, 1] {
                let mut v = vec![0i64; 3];
                v[i] = s;
                verts.push(qvec(&v));
            }
        }
        Polytope::from_vertices(3, verts).unwrap()
    }

    #[test]
    fn closure_adds_concurrent_facets() {
        let o = octahedron();
        let arr = Arrangement::new(&o);
        // Three facets through the vertex e3; the fourth joins under closure.
        let through_top: Vec<usize> = o
            .facets()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.eval_affine(&qvec(&[0, 0, 1])).is_zero())
            .map(|(i, _)| i)
            .collect();
        assert_eq!(through_top.len(), 4);
        let partial = &through_top[..3];
        assert_eq!(arr.closure(partial).unwrap(), through_top);
    }

    #[test]
    fn cube_flat_counts_and_orders() {
        let c = cube();
        let arr = Arrangement::new(&c);
        let levels = arr.flats().unwrap();
        assert_eq!(levels.len(), 3);
        assert_eq!(levels[0].len(), 6);
        assert!(levels[0].iter().all(|f| f.order == 0 && f.face_dim == 2));
        // 12 edges plus 3 lines at infinity from opposite facet pairs.
        assert_eq!(levels[1].len(), 15);
        let edge_like = levels[1].iter().filter(|f| f.face_dim == 1).count();
        let infinity = levels[1].iter().filter(|f| f.face_dim == -1).count();
        assert_eq!((edge_like, infinity), (12, 3));
        assert!(levels[1]
            .iter()
            .all(|f| f.order == usize::from(f.face_dim == -1)));
        // 8 vertices plus 3 coordinate points at infinity.
        assert_eq!(levels[2].len(), 11);
        let orders: Vec<usize> = {
            let mut v: Vec<usize> = levels[2].iter().map(|f| f.order).collect();
            v.sort();
            v
        };
        assert_eq!(orders, vec![0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2]);
    }

    #[test]
    fn octahedron_point_residual() {
        let o = octahedron();
        let arr = Arrangement::new(&o);
        let residual = arr.point_residual().unwrap();
        assert_eq!(residual.len(), 20);
        let mut points: Vec<QVec> = residual
            .iter()
            .map(|f| f.point().unwrap().coords().to_vec())
            .collect();
        points.sort();
        let mut expected: Vec<QVec> = Vec::new();
        for i in 0..3 {
            for s in [-1i64, 1] {
                let mut v = vec![0i64; 3];
                v[i] = s;
                let mut p = vec![1];
                p.extend(v);
                expected.push(crate::linalg::normalize_canonical(&qvec(&p)).unwrap());
            }
        }
        for a in [-1i64, 1] {
            for b in [-1i64, 1] {
                for c in [-1i64, 1] {
                    expected
                        .push(crate::linalg::normalize_canonical(&qvec(&[1, a, b, c])).unwrap());
                }
            }
        }
        for pat in [
            [0, 1, 1, 0],
            [0, 1, -1, 0],
            [0, 1, 0, 1],
            [0, 1, 0, -1],
            [0, 0, 1, 1],
            [0, 0, 1, -1],
        ] {
            expected.push(crate::linalg::normalize_canonical(&qvec(&pat)).unwrap());
        }
        expected.sort();
        assert_eq!(points, expected);
        let mut orders: Vec<usize> = residual.iter().map(|f| f.order).collect();
        orders.sort();
        let mut want = vec![1usize; 14];
        want.extend([2, 2, 2, 2, 2, 2]);
        assert_eq!(orders, want);
    }

    #[test]
    fn octahedron_vertex_flat_data() {
        let o = octahedron();
        let arr = Arrangement::new(&o);
        let through_top: Vec<usize> = (0..8)
            .filter(|&fi| o.facets()[fi].eval_affine(&qvec(&[0, 0, 1])).is_zero())
            .collect();
        let flat = arr.flat(&through_top).unwrap();
        assert_eq!(flat.rank, 3);
        assert_eq!(flat.nullity, 1);
        assert_eq!(flat.face_dim, 0);
        assert_eq!(flat.order, 1);
        assert_eq!(
            flat.point().unwrap().coords(),
            qvec(&[1, 0, 0, 1]).as_slice()
        );
    }

    #[test]
    fn triangle_residual_is_its_vertices() {
        let t =
            Polytope::from_vertices(2, vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])]).unwrap();
        let arr = Arrangement::new(&t);
        let residual = arr.point_residual().unwrap();
        assert_eq!(residual.len(), 3);
        assert!(residual.iter().all(|f| f.order == 0 && f.face_dim == 0));
    }

    #[test]
    fn rank_matches_covector_rank() {
        let c = cube();
        let arr = Arrangement::new(&c);
        assert_eq!(arr.rank_of(&[0, 1, 2]).unwrap(), 3);
        assert_eq!(arr.rank_of(&[]).unwrap(), 0);
        assert!(arr.rank_of(&[9]).is_err());
        // An opposite pair spans only rank 2.
        let f0 = c.facets()[0].clone();
        let opp = c
            .facets()
            .iter()
            .position(|g| {
                g.linear_part()
                    .iter()
                    .zip(f0.linear_part())
                    .all(|(a, b)| *a == -b)
            })
            .unwrap();
        assert_eq!(arr.rank_of(&[0, opp]).unwrap(), 2);
    }

    #[test]
    fn flats_reject_empty_intersection_inputs() {
        let t =
            Polytope::from_vertices(2, vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])]).unwrap();
        let arr = Arrangement::new(&t);
        // All three edge lines of a triangle have no common point.
        assert!(arr.flat(&[0, 1, 2]).is_err());
    }
}
