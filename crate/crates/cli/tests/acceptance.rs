//! Acceptance gate: one test per criterion, each ending in a pass line.

mod common;

use common::*;
use polyadj_core::adjoint::{adjoint, verify_orders, warren_adjoint_from, AdjointMethod};
use polyadj_core::arrangement::Arrangement;
use polyadj_core::linalg::{qvec, rat, rint, QMatrix, Rat};
use polyadj_core::poly::{parse_poly, HomoPoly};
use polyadj_core::polytope::{Polytope, ProjectivePoint};
use polyadj_core::residue::{
    canonical_form, default_pivot, form_ratio, proportional, recursion_check, residue_along,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

const OCTAHEDRON_DOC: &str = r#"{"dim":3,"vertices":[["1","0","0"],["-1","0","0"],["0","1","0"],["0","-1","0"],["0","0","1"],["0","0","-1"]]}"#;

const CUBE_DOC: &str = r#"{"dim":3,"inequalities":[["1","1","0","0"],["1","-1","0","0"],["1","0","1","0"],["1","0","-1","0"],["1","0","0","1"],["1","0","0","-1"]]}"#;

const TRUNCATED_SIMPLEX_DOC: &str = r#"{"dim":4,"inequalities":[["0","1","0","0","0"],["0","0","1","0","0"],["0","0","0","1","0"],["0","0","0","0","1"],["4","-1","-1","-1","-1"],["6","-2","0","-1","0"],["6","0","-2","0","1"]]}"#;

/// Octahedron residual in the reference layout, homogenizing coordinate
/// written last, with the prescribed order of each point.
const OCTAHEDRON_RESIDUAL: [([i64; 4], usize); 20] = [
    ([0, 0, 1, 1], 1),
    ([0, 1, 0, 1], 1),
    ([0, -1, 1, 0], 2),
    ([1, 0, 0, 1], 1),
    ([-1, 0, 1, 0], 2),
    ([-1, 1, 0, 0], 2),
    ([-1, 1, 1, 1], 1),
    ([1, -1, 1, 1], 1),
    ([1, 1, -1, 1], 1),
    ([1, 1, 1, 1], 1),
    ([1, 1, 0, 0], 2),
    ([-1, -1, 1, 1], 1),
    ([1, 0, 1, 0], 2),
    ([-1, 0, 0, 1], 1),
    ([-1, 1, -1, 1], 1),
    ([0, 1, 1, 0], 2),
    ([0, -1, 0, 1], 1),
    ([1, -1, -1, 1], 1),
    ([-1, -1, -1, 1], 1),
    ([0, 0, -1, 1], 1),
];

/// Octahedron adjoint in the reference layout, homogenizing variable last.
const OCTAHEDRON_QUARTIC: &str = "-X0^4+2*X0^2*X1^2+2*X0^2*X2^2-2*X0^2*X3^2-X1^4+2*X1^2*X2^2-2*X1^2*X3^2-X2^4-2*X2^2*X3^2+3*X3^4";

/// Truncated 4-simplex adjoint, homogenizing variable first.
const TRUNCATED_SIMPLEX_QUADRIC: &str =
    "72*X0^2-18*X0*X1-18*X0*X2+4*X1*X2-12*X0*X3+3*X2*X3+12*X0*X4-3*X1*X4-2*X3*X4";

fn run_cli(args: &[&str], stdin_text: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polyadj"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin_text.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

/// Reference columns put the homogenizing coordinate last; ours comes first.
fn reference_point(col: &[i64; 4]) -> Vec<Rat> {
    let moved = qvec(&[col[3], col[0], col[1], col[2]]);
    ProjectivePoint::new(moved).unwrap().coords().to_vec()
}

#[test]
fn criterion_1_octahedron_residual() {
    let start = Instant::now();
    let (code, out) = run_cli(&["residual"], OCTAHEDRON_DOC);
    let elapsed = start.elapsed();
    assert_eq!(code, 0);

    let mut expected: Vec<(Vec<Rat>, usize)> = OCTAHEDRON_RESIDUAL
        .iter()
        .map(|(col, ord)| (reference_point(col), *ord))
        .collect();
    expected.sort();

    let mut actual: Vec<(Vec<Rat>, usize)> = out
        .lines()
        .map(|line| {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let ord: usize = toks.last().unwrap().parse().unwrap();
            let coords: Vec<Rat> = toks[..toks.len() - 1]
                .iter()
                .map(|t| rint(t.parse::<i64>().unwrap()))
                .collect();
            (coords, ord)
        })
        .collect();
    actual.sort();

    assert_eq!(actual.len(), 20);
    assert_eq!(actual, expected);
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 1 (octahedron residual, 20 points with orders): pass");
}

#[test]
fn criterion_2_octahedron_adjoint_both_routes() {
    let start = Instant::now();
    let (code, out) = run_cli(&["adjoint", "--method", "both"], OCTAHEDRON_DOC);
    let elapsed = start.elapsed();
    assert_eq!(code, 0);

    let ours = parse_poly(out.trim(), 4).unwrap();
    // Relabel the reference quartic: its last variable is our first.
    let literal = parse_poly(OCTAHEDRON_QUARTIC, 4).unwrap();
    let bridge = QMatrix::from_rows(vec![
        qvec(&[0, 1, 0, 0]),
        qvec(&[0, 0, 1, 0]),
        qvec(&[0, 0, 0, 1]),
        qvec(&[1, 0, 0, 0]),
    ])
    .unwrap();
    let expected = literal.linear_substitute(&bridge).unwrap();
    assert!(proportional(&ours, &expected));

    // The route comparison and the unique interpolation kernel both sit
    // behind --method both; rerun the routes individually as well.
    let (_, warren_out) = run_cli(&["adjoint", "--method", "warren"], OCTAHEDRON_DOC);
    let (_, interp_out) = run_cli(&["adjoint", "--method", "interpolate"], OCTAHEDRON_DOC);
    assert_eq!(warren_out, out);
    assert_eq!(interp_out, out);

    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("criterion 2 (octahedron adjoint, both routes match the quartic): pass");
}

#[test]
fn criterion_3_truncated_simplex_adjoint() {
    let start = Instant::now();
    let (code, out) = run_cli(&["adjoint", "--method", "both"], TRUNCATED_SIMPLEX_DOC);
    let elapsed = start.elapsed();
    assert_eq!(code, 0);

    let ours = parse_poly(out.trim(), 5).unwrap();
    let expected = parse_poly(TRUNCATED_SIMPLEX_QUADRIC, 5).unwrap();
    assert!(proportional(&ours, &expected));

    let point = vec![rint(1), rint(0), rint(0), rint(6), rint(-6)];
    assert_eq!(ours.vanishing_order_at_point(&point).unwrap(), 2);

    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("criterion 3 (truncated 4-simplex adjoint and its vanishing order): pass");
}

#[test]
fn criterion_4_cube_adjoint_strictness() {
    let (code, out) = run_cli(&["adjoint"], CUBE_DOC);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "X0^2");

    let p = cube();
    let residual = Arrangement::new(&p).point_residual().unwrap();
    assert_eq!(residual.len(), 11);
    let affine = residual.iter().filter(|f| f.point().unwrap().is_affine());
    let infinite = residual.iter().filter(|f| !f.point().unwrap().is_affine());
    assert_eq!(affine.clone().count(), 8);
    assert!(affine.clone().all(|f| f.order == 0));
    assert_eq!(infinite.clone().count(), 3);
    assert!(infinite.clone().all(|f| f.order == 2));

    // The three lines at infinity demand order 1 but the adjoint vanishes
    // there to order 2: satisfied strictly.
    let adj = parse_poly("X0^2", 4).unwrap();
    let rows = verify_orders(&p, &adj).unwrap();
    assert!(rows.iter().all(|r| r.satisfied));
    let strict: Vec<_> = rows.iter().filter(|r| r.mu as usize > r.order).collect();
    assert_eq!(strict.len(), 3);
    for row in &strict {
        assert_eq!(row.rank, 2);
        assert_eq!(row.face_dim, -1);
        assert_eq!(row.order, 1);
        assert_eq!(row.mu, 2);
    }
    println!("criterion 4 (cube adjoint with three strictly satisfied lines): pass");
}

#[test]
fn criterion_5_residue_recursion() {
    let terminals = recursion_check(&segment()).unwrap();
    assert_eq!(terminals, vec![rint(1), rint(-1)]);

    // Each run validates per-segment cancellation and a uniform terminal
    // magnitude across the whole tree.
    assert_eq!(recursion_check(&unit_square()).unwrap().len(), 8);
    assert_eq!(recursion_check(&cube()).unwrap().len(), 48);
    assert_eq!(recursion_check(&octahedron()).unwrap().len(), 48);
    println!("criterion 5 (residue recursion on segment, square, cube, octahedron): pass");
}

fn valuation_laws(p: &Polytope, adj: &HomoPoly) {
    let arr = Arrangement::new(p);
    for level in arr.flats().unwrap() {
        let flat = &level[0];
        let span = flat.subspace.spanning_coords();
        let mu = adj.vanishing_order_along(&span).unwrap();
        let square = adj.mul(adj).unwrap();
        assert_eq!(square.vanishing_order_along(&span).unwrap(), 2 * mu);
        let form = HomoPoly::linear(p.facets()[flat.members[0]].coeffs());
        let form_mu = form.vanishing_order_along(&span).unwrap();
        let product = adj.mul(&form).unwrap();
        assert_eq!(product.vanishing_order_along(&span).unwrap(), mu + form_mu);
    }
}

fn check_instance(i: usize, p: &Polytope, rng: &mut ChaCha8Rng) {
    let n = p.dim();
    let d = p.facets().len();

    // Routes agree, and the interpolation kernel is one-dimensional or the
    // second route errors out.
    let adj = adjoint(p, AdjointMethod::Both).unwrap_or_else(|e| panic!("instance {i}: {e}"));
    assert_eq!(adj.degree() as usize, d - n - 1, "instance {i}: degree");

    // Any pulling order gives the same polynomial.
    let z = p.interior_point();
    let mut order: Vec<usize> = (0..d).collect();
    order.shuffle(rng);
    let shuffled = warren_adjoint_from(p, &z, &order).unwrap();
    assert_eq!(
        shuffled, adj,
        "instance {i}: pulling order changed the result"
    );

    // So does any strictly interior base point for the dual.
    let z2 = random_interior_point(rng, p);
    let identity: Vec<usize> = (0..d).collect();
    let moved = warren_adjoint_from(p, &z2, &identity).unwrap();
    assert_eq!(
        moved, adj,
        "instance {i}: interior point changed the result"
    );

    // The adjoint meets every prescribed vanishing order.
    let rows = verify_orders(p, &adj).unwrap();
    assert!(
        rows.iter().all(|r| r.satisfied),
        "instance {i}: an order is unsatisfied"
    );

    // One residue step at every facet lands on the facet's canonical form.
    let form = canonical_form(p).unwrap();
    for h in 0..d {
        let pivot = default_pivot(&form, h).unwrap();
        let (sub, res) = residue_along(p, &form, h, pivot).unwrap();
        form_ratio(&res, &canonical_form(&sub).unwrap())
            .unwrap_or_else(|e| panic!("instance {i} facet {h}: {e}"));
    }

    if i.is_multiple_of(5) {
        valuation_laws(p, &adj);
    }
}

#[test]
fn criterion_6_random_polytopes() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a11);

    let mut instances: Vec<Polytope> = Vec::new();
    for edges in 3..=10 {
        for _ in 0..3 {
            let base = random_polygon(&mut rng, edges);
            instances.push(random_transform(&mut rng, &base));
        }
    }
    let seeds3 = [
        tetrahedron(),
        square_pyramid(),
        triangular_prism(),
        cube(),
        cut_tetrahedron(),
        pentagonal_pyramid(),
        octahedron(),
    ];
    for seed in &seeds3 {
        for _ in 0..3 {
            instances.push(random_transform(&mut rng, seed));
        }
    }
    let seeds4 = [
        simplex4(),
        once_cut_simplex4(),
        twice_cut_simplex4(),
        cube4(),
    ];
    for seed in &seeds4 {
        for _ in 0..2 {
            instances.push(random_transform(&mut rng, seed));
        }
    }

    assert!(instances.len() >= 50, "only {} instances", instances.len());
    for (i, p) in instances.iter().enumerate() {
        assert!(p.dim() >= 2 && p.dim() <= 4);
        assert!(p.facets().len() <= 10);
        check_instance(i, p, &mut rng);
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "criterion 6 (property suite over {} random polytopes): pass",
        instances.len()
    );
}

#[test]
fn criterion_7_simple_arrangements() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7b22);

    let mut pool: Vec<Polytope> = Vec::new();
    for edges in 3..=8 {
        for _ in 0..2 {
            let base = random_polygon(&mut rng, edges);
            pool.push(random_transform(&mut rng, &base));
        }
    }
    for seed in [tetrahedron(), triangular_prism(), cut_tetrahedron()] {
        for _ in 0..3 {
            pool.push(random_transform(&mut rng, &seed));
        }
    }

    let mut simple = 0usize;
    for p in &pool {
        let n = p.dim();
        let arr = Arrangement::new(p);
        let levels = arr.flats().unwrap();
        let all: Vec<_> = levels.iter().flatten().collect();
        if all.iter().any(|f| f.nullity != 0) {
            continue;
        }
        simple += 1;
        for flat in all {
            let expected_dim = (n - flat.rank) as i64;
            assert!(flat.face_dim <= expected_dim);
            assert!(flat.order <= 1, "simple flats never demand more than 1");
            assert_eq!(
                flat.order == 1,
                flat.face_dim != expected_dim,
                "order 1 exactly at flats whose face is empty or undersized"
            );
        }
    }
    assert!(simple >= 10, "only {simple} simple instances");
    println!("criterion 7 (order structure on {simple} simple arrangements): pass");
}

#[test]
fn criterion_8_pyramid_cone_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8c33);

    for edges in 4..=8 {
        let base = if edges == 5 {
            pentagon()
        } else {
            random_polygon(&mut rng, edges)
        };
        let apex = vec![
            rat(rng.gen_range(-4..=4), 2),
            rat(rng.gen_range(-4..=4), 2),
            rint(rng.gen_range(1..=3)),
        ];
        let p = pyramid(&base, &apex);
        assert_eq!(p.facets().len(), edges + 1);

        let adj = adjoint(&p, AdjointMethod::Both).unwrap();
        let adj_base = adjoint(&base, AdjointMethod::Both).unwrap();

        // In coordinates spanned by the base plane and the apex, the last
        // variable must drop out: the surface is a cone through the apex.
        let cone_coords = QMatrix::from_rows(vec![
            vec![rint(1), rint(0), rint(0), rint(1)],
            vec![rint(0), rint(1), rint(0), apex[0].clone()],
            vec![rint(0), rint(0), rint(1), apex[1].clone()],
            vec![rint(0), rint(0), rint(0), apex[2].clone()],
        ])
        .unwrap();
        let g = adj.linear_substitute(&cone_coords).unwrap();
        for (mono, _) in g.terms() {
            assert_eq!(mono.0[3], 0, "adjoint is not a cone through the apex");
        }

        // Restricted to the base plane it is the base polygon's adjoint.
        let restrict = QMatrix::from_rows(vec![
            vec![rint(1), rint(0), rint(0)],
            vec![rint(0), rint(1), rint(0)],
            vec![rint(0), rint(0), rint(1)],
            vec![rint(0), rint(0), rint(0)],
        ])
        .unwrap();
        let restricted = adj.linear_substitute(&restrict).unwrap();
        assert!(proportional(&restricted, &adj_base));

        // The apex point demands vanishing to order edges - 3.
        let apex_point = ProjectivePoint::from_affine(&apex);
        let residual = Arrangement::new(&p).point_residual().unwrap();
        let flat = residual
            .iter()
            .find(|f| f.point() == Some(&apex_point))
            .expect("apex is a residual point for edges >= 4");
        assert_eq!(flat.order, edges - 3, "apex order for {edges} edges");
    }
    println!("criterion 8 (pyramid adjoints are cones over the base adjoint): pass");
}
