use structurable::analysis::{derivation_algebra, functional_identity_space, grid_values, is_algebra_automorphism, subspace_checks};
use structurable::construct::ak_construct;
use structurable::fixtures;
use structurable::linalg::Subspace;
use structurable::registry::{canonical, Label};
use structurable::reproduce;
use structurable::{q, Matrix, Q};

// Dimensions of the degree-two identity spaces, counted independently with a
// symbolic nullspace over all basis pairs.
const IDENTITY_DIMS: [(Label, usize); 13] = [
    (Label::J1, 7),
    (Label::J2, 7),
    (Label::J3, 7),
    (Label::J4, 7),
    (Label::J5, 7),
    (Label::J6, 7),
    (Label::A1, 5),
    (Label::A2, 4),
    (Label::A3, 5),
    (Label::A4, 4),
    (Label::A5, 2),
    (Label::S1, 5),
    (Label::S2, 3),
];

#[test]
fn identity_space_dims_are_locked() {
    for (l, d) in IDENTITY_DIMS {
        assert_eq!(functional_identity_space(&canonical(l)).dim(), d, "{l}");
    }
}

#[test]
fn bracket_entry_counts() {
    let counts = [21, 27, 24, 36, 36, 27, 62];
    for (l, c) in Label::seven().into_iter().zip(counts) {
        assert_eq!(ak_construct(&canonical(l)).unwrap().lie.entries().len(), c, "{l}");
        assert_eq!(fixtures::ak_table(l).unwrap().brackets.len(), c, "{l}");
    }
}

#[test]
fn grid_size() {
    assert_eq!(grid_values(3).len(), 225);
    assert_eq!(grid_values(1).len(), 9);
}

#[test]
fn derivation_dims() {
    for (k, l) in Label::seven().into_iter().enumerate() {
        let a = canonical(l);
        assert_eq!(derivation_algebra(&a, false).dim(), reproduce::DER_DIMS[k], "{l}");
        assert_eq!(derivation_algebra(&a, true).dim(), reproduce::BAR_DER_DIMS[k], "{l}");
    }
}

#[test]
fn a3_rescaling_e2_breaks_the_product() {
    let a3 = canonical(Label::A3);
    let m = Matrix::diag(&[Q::one(), q("2"), q("3")]);
    assert!(!is_algebra_automorphism(&a3, &a3, &m));
    let m = Matrix::diag(&[Q::one(), Q::one(), q("3")]);
    assert!(is_algebra_automorphism(&a3, &a3, &m));
}

#[test]
fn unlisted_ideals() {
    let a3 = canonical(Label::A3);
    let s = Subspace::span(3, &[vec![q("1"), q("-1"), q("0")], vec![q("0"), q("0"), q("1")]]);
    assert!(subspace_checks(&a3, &s).unwrap().is_ideal);
    let a4 = canonical(Label::A4);
    let s = Subspace::span(3, &[vec![q("1"), q("-1"), q("i")]]);
    let c = subspace_checks(&a4, &s).unwrap();
    assert!(c.is_ideal && !c.is_bar_closed);
}

#[test]
fn every_graded_algebra_is_perfect() {
    for l in Label::seven() {
        assert!(ak_construct(&canonical(l)).unwrap().lie.is_perfect(), "{l}");
    }
}

#[test]
fn first_skew_identity_fails_on_s2() {
    let fx = fixtures::identities().unwrap();
    let s2 = functional_identity_space(&canonical(Label::S2));
    for n in ["f1", "f2"] {
        assert!(!s2.contains(&fx.identities[n]), "{n}");
    }
    for n in ["g1", "g2", "g3"] {
        assert!(s2.contains(&fx.identities[n]), "{n}");
    }
}
