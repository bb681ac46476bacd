//! Seed polytopes and seeded random transformations shared by the test
//! targets.

#![allow(dead_code)]

use num::Zero;
use polyadj_core::linalg::{qvec, rat, rint, QMatrix, QVec, Rat};
use polyadj_core::polytope::{LinearForm, Polytope};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn segment() -> Polytope {
    Polytope::from_vertices(1, vec![qvec(&[0]), qvec(&[1])]).unwrap()
}

pub fn unit_square() -> Polytope {
    Polytope::from_vertices(
        2,
        vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])],
    )
    .unwrap()
}

/// Pentagon with no symmetry and a rational centroid.
pub fn pentagon() -> Polytope {
    Polytope::from_vertices(
        2,
        vec![
            qvec(&[0, 0]),
            qvec(&[2, 0]),
            qvec(&[3, 2]),
            qvec(&[1, 3]),
            qvec(&[-1, 2]),
        ],
    )
    .unwrap()
}

pub fn cube() -> Polytope {
    let mut verts = Vec::new();
    for a in [-1i64, 1] {
        for b in [-1i64, 1] {
            for c in [-1i64, 1] {
                verts.push(qvec(&[a, b, c]));
            }
        }
    }
    Polytope::from_vertices(3, verts).unwrap()
}

pub fn octahedron() -> Polytope {
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

pub fn tetrahedron() -> Polytope {
    Polytope::from_vertices(
        3,
        vec![
            qvec(&[0, 0, 0]),
            qvec(&[1, 0, 0]),
            qvec(&[0, 1, 0]),
            qvec(&[0, 0, 1]),
        ],
    )
    .unwrap()
}

pub fn square_pyramid() -> Polytope {
    Polytope::from_vertices(
        3,
        vec![
            qvec(&[-1, -1, 0]),
            qvec(&[1, -1, 0]),
            qvec(&[-1, 1, 0]),
            qvec(&[1, 1, 0]),
            qvec(&[0, 0, 1]),
        ],
    )
    .unwrap()
}

pub fn triangular_prism() -> Polytope {
    let mut verts = Vec::new();
    for z in [0i64, 1] {
        verts.push(qvec(&[0, 0, z]));
        verts.push(qvec(&[1, 0, z]));
        verts.push(qvec(&[0, 1, z]));
    }
    Polytope::from_vertices(3, verts).unwrap()
}

/// Tetrahedron with one corner sliced off parallel to a facet and another
/// sliced by a coordinate plane: six facets, still a simple polytope.
pub fn cut_tetrahedron() -> Polytope {
    let forms = vec![
        LinearForm::from_i64(&[0, 1, 0, 0]),
        LinearForm::from_i64(&[0, 0, 1, 0]),
        LinearForm::from_i64(&[0, 0, 0, 1]),
        LinearForm::from_i64(&[1, -1, -1, -1]),
        LinearForm::from_i64(&[-1, 4, 4, 4]),
        LinearForm::from_i64(&[3, -4, 0, 0]),
    ];
    Polytope::from_inequalities(3, forms).unwrap()
}

pub fn pentagonal_pyramid() -> Polytope {
    pyramid(&pentagon(), &[rint(1), rint(1), rint(2)])
}

pub fn simplex4() -> Polytope {
    let mut verts = vec![qvec(&[0, 0, 0, 0])];
    for i in 0..4 {
        let mut v = vec![0i64; 4];
        v[i] = 1;
        verts.push(qvec(&v));
    }
    Polytope::from_vertices(4, verts).unwrap()
}

/// Scaled 4-simplex with one extra cut: six facets.
pub fn once_cut_simplex4() -> Polytope {
    let forms = vec![
        LinearForm::from_i64(&[0, 1, 0, 0, 0]),
        LinearForm::from_i64(&[0, 0, 1, 0, 0]),
        LinearForm::from_i64(&[0, 0, 0, 1, 0]),
        LinearForm::from_i64(&[0, 0, 0, 0, 1]),
        LinearForm::from_i64(&[4, -1, -1, -1, -1]),
        LinearForm::from_i64(&[6, -2, 0, -1, 0]),
    ];
    Polytope::from_inequalities(4, forms).unwrap()
}

/// Scaled 4-simplex with two extra cuts: seven facets.
pub fn twice_cut_simplex4() -> Polytope {
    let forms = vec![
        LinearForm::from_i64(&[0, 1, 0, 0, 0]),
        LinearForm::from_i64(&[0, 0, 1, 0, 0]),
        LinearForm::from_i64(&[0, 0, 0, 1, 0]),
        LinearForm::from_i64(&[0, 0, 0, 0, 1]),
        LinearForm::from_i64(&[4, -1, -1, -1, -1]),
        LinearForm::from_i64(&[6, -2, 0, -1, 0]),
        LinearForm::from_i64(&[6, 0, -2, 0, 1]),
    ];
    Polytope::from_inequalities(4, forms).unwrap()
}

pub fn cube4() -> Polytope {
    let mut verts = Vec::new();
    for mask in 0..16i64 {
        verts.push(qvec(&[
            (mask & 1) * 2 - 1,
            ((mask >> 1) & 1) * 2 - 1,
            ((mask >> 2) & 1) * 2 - 1,
            ((mask >> 3) & 1) * 2 - 1,
        ]));
    }
    Polytope::from_vertices(4, verts).unwrap()
}

/// Convex polygon with `edges` vertices sampled on a parabola, so every
/// sampled point is extreme.
pub fn random_polygon(rng: &mut ChaCha8Rng, edges: usize) -> Polytope {
    let mut picks: Vec<i64> = Vec::new();
    while picks.len() < edges {
        let k = rng.gen_range(-24..=24i64);
        if !picks.contains(&k) {
            picks.push(k);
        }
    }
    let verts: Vec<QVec> = picks
        .iter()
        .map(|&k| vec![rat(k, 2), rat(k * k, 4)])
        .collect();
    Polytope::from_vertices(2, verts).unwrap()
}

/// Pyramid over a polygon placed in the plane of the first two coordinates.
pub fn pyramid(base: &Polytope, apex: &[Rat]) -> Polytope {
    assert_eq!(base.dim(), 2);
    assert_eq!(apex.len(), 3);
    let mut verts: Vec<QVec> = base
        .vertices()
        .iter()
        .map(|v| vec![v[0].clone(), v[1].clone(), rint(0)])
        .collect();
    verts.push(apex.to_vec());
    Polytope::from_vertices(3, verts).unwrap()
}

/// Invertible matrix fixing the hyperplane at infinity, so it always maps a
/// polytope to a polytope.
pub fn random_affine_map(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    loop {
        let mut rows: Vec<QVec> = Vec::with_capacity(n + 1);
        let mut first = vec![rint(0); n + 1];
        first[0] = rint(1);
        rows.push(first);
        for _ in 0..n {
            let mut row: Vec<Rat> = Vec::with_capacity(n + 1);
            for _ in 0..=n {
                row.push(rint(rng.gen_range(-2..=2)));
            }
            rows.push(row);
        }
        let m = QMatrix::from_rows(rows).unwrap();
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

pub fn random_projective_map(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    loop {
        let mut rows: Vec<QVec> = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let mut row: Vec<Rat> = Vec::with_capacity(n + 1);
            for _ in 0..=n {
                row.push(rint(rng.gen_range(-2..=2)));
            }
            rows.push(row);
        }
        let m = QMatrix::from_rows(rows).unwrap();
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

/// Random projective image of `p`, falling back to an affine motion when the
/// sampled maps keep sending vertices across the hyperplane at infinity.
pub fn random_transform(rng: &mut ChaCha8Rng, p: &Polytope) -> Polytope {
    for _ in 0..20 {
        let m = random_projective_map(rng, p.dim());
        if let Ok(q) = p.apply_projective_map(&m) {
            return q;
        }
    }
    let m = random_affine_map(rng, p.dim());
    p.apply_projective_map(&m).unwrap()
}

/// Random interior point: a positive rational combination of all vertices.
pub fn random_interior_point(rng: &mut ChaCha8Rng, p: &Polytope) -> Vec<Rat> {
    let weights: Vec<Rat> = p
        .vertices()
        .iter()
        .map(|_| rint(rng.gen_range(1..=5)))
        .collect();
    let total: Rat = weights.iter().sum();
    let mut z = vec![rint(0); p.dim()];
    for (v, w) in p.vertices().iter().zip(&weights) {
        for (zi, vi) in z.iter_mut().zip(v) {
            *zi += vi * w;
        }
    }
    z.iter().map(|zi| zi / &total).collect()
}
