use dualcell_core::lattice::Lattice;
use dualcell_core::lifting::{facet_vectors_by_orbit, recover_qform, verify_lifting, Generatrissa, LiftError};
use dualcell_core::linalg::{is_positive_definite, mat_mul, transpose, Mat};
use dualcell_core::rat::{dot, frac, int, neg, qvec, Rat};
use dualcell_core::scaling::{propagate, verify_canonical, GainFunction, NormalFrame, ScalingAssignment};
use dualcell_core::tiling::TilingComplex;
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::OnceLock;

const A2: &[&[i64]] = &[&[2, 1], &[1, 2]];
const SHEARED_HEX: &[&[i64]] = &[&[4, 2], &[2, 5]];

fn cplx(rows: &[&[i64]]) -> TilingComplex {
    TilingComplex::build(&Lattice::from_int_gram(rows).unwrap()).unwrap()
}

fn canonical(c: &TilingComplex, fr: &NormalFrame) -> ScalingAssignment {
    let gain = GainFunction::from_d2_stars(c, fr).unwrap();
    let s = propagate(c, &gain, c.orbits_of_dim(1)[0]).unwrap();
    assert!(verify_canonical(c, &s, fr).unwrap().ok);
    s
}

fn lift(rows: &[&[i64]]) -> (TilingComplex, Generatrissa) {
    let c = cplx(rows);
    let fr = NormalFrame::canonical(&c);
    let s = canonical(&c, &fr);
    let g = Generatrissa::build(&c, &s, &fr).unwrap();
    (c, g)
}

fn cached(rows: &'static [&'static [i64]], cell: &'static OnceLock<Generatrissa>) -> &'static Generatrissa {
    cell.get_or_init(|| lift(rows).1)
}

static SHEARED_LIFT: OnceLock<Generatrissa> = OnceLock::new();
static A2_LIFT: OnceLock<Generatrissa> = OnceLock::new();

fn mat(rows: &[&[i64]]) -> Mat {
    rows.iter().map(|r| qvec(r)).collect()
}

#[test]
fn square_grid_gradients_are_the_shifts() {
    let (_, g) = lift(&[&[1, 0], &[0, 1]]);
    for i in -2..=2 {
        for j in -2..=2 {
            assert_eq!(g.gradient(&[i, j]), qvec(&[i, j]));
        }
    }
    let q = recover_qform(&g).unwrap();
    assert_eq!(q.matrix, mat(&[&[1, 0], &[0, 1]]));
    // (λ_1·n_1) k²/2 along the first axis
    for k in 0..6 {
        assert_eq!(g.eval(&qvec(&[k, 0])).unwrap(), int(k * k) * frac(1, 2));
    }
    let r = verify_lifting(&g, &q);
    assert!(r.tangency && r.gradients && r.convexity);
}

#[test]
fn regular_hexagon_form() {
    let (c, g) = lift(A2);
    let q = recover_qform(&g).unwrap();
    // primitive covector normals of the hexagon are G·t, all with scale 1: n_i = G λ_i
    let gram = mat(A2);
    let [l1, l2] = q.basis.clone();
    let n1 = dualcell_core::linalg::mat_vec(&gram, &qvec(&l1));
    let n2 = dualcell_core::linalg::mat_vec(&gram, &qvec(&l2));
    let want = [
        dot(&qvec(&l1), &n1) * frac(1, 2),
        dot(&qvec(&l2), &n2) * frac(1, 2),
        dot(&qvec(&l2), &n1),
    ];
    assert_eq!(q.coefficients, want);
    assert_eq!(q.coefficients[0], q.coefficients[1]);
    assert_eq!(q.matrix, gram);
    let r = verify_lifting(&g, &q);
    assert!(r.tangency && r.gradients && r.convexity, "{r:?}");
    // G coincides with Q at every center, including ones outside the verified window
    for lam in [[4, -3], [-5, 1], [3, 3]] {
        assert_eq!(g.center_value(&lam), q.eval(&qvec(&lam)));
    }
    assert_eq!(c.orbit_counts(), vec![2, 3, 1]);
}

#[test]
fn sheared_hexagon_form_is_not_diagonal() {
    let (_, g) = lift(SHEARED_HEX);
    let q = recover_qform(&g).unwrap();
    assert!(!q.coefficients[2].is_zero());
    assert!(is_positive_definite(&q.matrix));
    let r = verify_lifting(&g, &q);
    assert!(r.tangency && r.gradients && r.convexity);
}

#[test]
fn corrupted_scaling_is_inconsistent() {
    let c = cplx(A2);
    let fr = NormalFrame::canonical(&c);
    let mut s = canonical(&c, &fr);
    let o = c.orbits_of_dim(1)[0];
    s.factors.insert(o, int(2));
    assert!(matches!(Generatrissa::build(&c, &s, &fr), Err(LiftError::InconsistentScaling(_))));
}

#[test]
fn flipped_sign_breaks_convexity() {
    let (c, g) = lift(&[&[1, 0], &[0, 1]]);
    let o = c.orbits_of_dim(1)[0];
    let mut incs = g.increments.clone();
    let (t, inc) = incs[&o].clone();
    incs.insert(o, (t, neg(&inc)));
    let bad = Generatrissa::from_increments(&c, incs).unwrap();
    assert_eq!(recover_qform(&bad), Err(LiftError::NotPositiveDefinite));
    // the honest form no longer touches the corrupted lifting at every center
    let q = recover_qform(&g).unwrap();
    let r = verify_lifting(&bad, &q);
    assert!(!r.convexity);
    assert_eq!(r.nonconvex_orbits, vec![o]);
    assert!(!r.tangency);
}

#[test]
fn vertices_are_ambiguous_but_edges_are_not() {
    let (_, g) = lift(A2);
    let v = g.prototile.vertices[0].clone();
    assert_eq!(g.eval(&v), Err(LiftError::PointOnSkeletonAmbiguity));
    let w = g.prototile.vertices[1].clone();
    let mid: Vec<Rat> = v.iter().zip(&w).map(|(a, b)| (a + b) * frac(1, 2)).collect();
    assert!(g.eval(&mid).is_ok());
}

#[test]
fn affine_covariance_under_a_shear() {
    let (c, g) = lift(SHEARED_HEX);
    let q = recover_qform(&g).unwrap();
    // new basis e'_1 = e_1, e'_2 = e_1 + e_2: old coordinates x = U x'
    let u = mat(&[&[1, 1], &[0, 1]]);
    let gram = mat(SHEARED_HEX);
    let g2: Mat = mat_mul(&mat_mul(&transpose(&u, 2), &gram), &u);
    let rows: Vec<Vec<i64>> =
        g2.iter().map(|r| r.iter().map(|x| x.to_integer().try_into().unwrap()).collect()).collect();
    let c2 = TilingComplex::build(&Lattice::from_int_gram(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>()).unwrap())
        .unwrap();
    // transport the frame and the scaling: covectors map by Uᵀ, facet vectors by U⁻¹
    let fr = NormalFrame::canonical(&c);
    let s = canonical(&c, &fr);
    let old = facet_vectors_by_orbit(&c);
    let mut normals = BTreeMap::new();
    let mut factors = BTreeMap::new();
    for (o2, t2) in facet_vectors_by_orbit(&c2) {
        let image = dualcell_core::linalg::mat_vec(&u, &qvec(&t2));
        let (o, _) = old
            .iter()
            .find(|(_, t)| qvec(t) == image || qvec(t) == neg(&image))
            .expect("facet vectors correspond");
        normals.insert(o2, dualcell_core::linalg::mat_vec(&transpose(&u, 2), fr.normal(*o)));
        factors.insert(o2, s.get(*o).clone());
    }
    let fr2 = NormalFrame { normals };
    let s2 = ScalingAssignment { factors };
    assert!(verify_canonical(&c2, &s2, &fr2).unwrap().ok);
    let q2 = recover_qform(&Generatrissa::build(&c2, &s2, &fr2).unwrap()).unwrap();
    assert_eq!(q2.matrix, mat_mul(&mat_mul(&transpose(&u, 2), &q.matrix), &u));
    // the same in ambient coordinates: a linear map M conjugates the form by M⁻¹
    let basis = mat(&[&[1, 0], &[0, 1]]);
    let m: Mat = vec![vec![int(2), Rat::one()], vec![Rat::zero(), frac(1, 3)]];
    let before = q.in_ambient(&basis).unwrap();
    let after = q.in_ambient(&mat_mul(&m, &basis)).unwrap();
    let minv = dualcell_core::linalg::inverse(&m).unwrap();
    assert_eq!(after, mat_mul(&mat_mul(&transpose(&minv, 2), &before), &minv));
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-15i64..=15, 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

fn point() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(small_rat(), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn path_independence(x in point(), via1 in prop::collection::vec(point(), 0..3), via2 in prop::collection::vec(point(), 0..3)) {
        let g = cached(SHEARED_HEX, &SHEARED_LIFT);
        let mut p1 = via1.clone();
        p1.push(x.clone());
        let mut p2 = via2.clone();
        p2.push(x.clone());
        prop_assert_eq!(g.eval_along(&p1), g.eval_along(&p2));
    }

    #[test]
    fn generatrissa_is_the_envelope_of_tangent_planes(x in point()) {
        let g = cached(A2, &A2_LIFT);
        let q = recover_qform(g).unwrap();
        let gx = g.eval_along(std::slice::from_ref(&x));
        // below the convex form, above each of its tangent planes at the centers
        prop_assert!(gx <= q.eval(&x));
        for i in -6..=6i64 {
            for j in -6..=6i64 {
                let lam = qvec(&[i, j]);
                let diff: Vec<Rat> = x.iter().zip(&lam).map(|(a, b)| a - b).collect();
                prop_assert!(gx >= q.eval(&lam) + dot(&q.gradient(&lam), &diff));
            }
        }
    }
}
