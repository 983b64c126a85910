mod common;

use cartankit::cartan::*;
use cartankit::exactnum::vector::{ints, zero_vec};
use cartankit::exactnum::{Matrix, Rational};
use cartankit::levicivita::*;
use cartankit::liealg::{is_automorphism, so_pq_basis, structure_constants_from_matrices, MatrixLieBasis, StructureConstants};
use cartankit::Error;
use common::*;
use proptest::prelude::*;

fn su2_curvature() -> (MetricLieGroupSpec, ConnectionTable, CurvatureTensor) {
    let spec = su2_spec();
    let conn = koszul_connection(&spec);
    let curv = riemann_curvature(&conn, &spec);
    (spec, conn, curv)
}

fn su2_export() -> CartanData {
    let (spec, _, curv) = su2_curvature();
    export_cartan_data(&spec, &curv, &isotropy_group_closure(&su2_isotropy()).unwrap()).unwrap()
}

#[test]
fn su2_frame_constants() {
    let spec = su2_spec();
    assert_eq!(spec.milnor_lambda(), Some([z(8), z(2), q(1, 2)]));
    let a = su2_frame_matrices();
    assert_eq!(a[1].commutator(&a[2]).unwrap(), a[0].scale(&z(8)));
    assert_eq!(a[2].commutator(&a[0]).unwrap(), a[1].scale(&z(2)));
    assert_eq!(a[0].commutator(&a[1]).unwrap(), a[2].scale(&q(1, 2)));
}

#[test]
fn su2_koszul_coefficient() {
    // ½(c₁₂³ − c₂₃¹ + c₃₁²) = ½(½ − 8 + 2)
    let (_, conn, _) = su2_curvature();
    assert_eq!(conn.get(0, 1, 2), &q(-11, 4));
    assert_eq!(conn.metric_violation(), None);
}

#[test]
fn su2_curvature_matrices() {
    let (_, _, curv) = su2_curvature();
    let (c1, c2, c3) = (q(181, 16), q(313, 16), q(599, 16));
    let rot = |i: usize, j: usize, c: &Rational| e(3, i, j).sub(&e(3, j, i)).unwrap().scale(c);
    assert_eq!(curv.matrix(0, 1), rot(1, 2, &c1));
    assert_eq!(curv.matrix(0, 2), rot(1, 3, &c2));
    assert_eq!(curv.matrix(1, 2), rot(2, 3, &-&c3));
    assert_eq!(curv.matrix(1, 2).get(1, 2), &-&c3);

    let k = sectional_curvatures(&curv);
    assert_eq!(k[&(0, 1)], c1);
    assert_eq!(k[&(0, 2)], c2);
    assert_eq!(k[&(1, 2)], -c3);
    assert_eq!(milnor_oracle(&z(8), &z(2), &q(1, 2)), [q(181, 16), q(313, 16), q(-599, 16)]);
}

#[test]
fn su2_curvature_report() {
    let (spec, _, curv) = su2_curvature();
    let r = curvature_report(&spec, &curv);
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["lambda"], serde_json::json!(["8", "2", "1/2"]));
    assert_eq!(v["sectional"]["12"], "181/16");
    assert_eq!(v["sectional"]["13"], "313/16");
    assert_eq!(v["sectional"]["23"], "-599/16");
    assert_eq!(plane_label(12, 0, 10), "1,11");
}

#[test]
fn curvature_examples() {
    let flat = MetricLieGroupSpec::new(StructureConstants::abelian(3)).unwrap();
    let c = riemann_curvature(&koszul_connection(&flat), &flat);
    assert!(c.is_zero());
    assert!(sectional_curvatures(&c).values().all(Rational::is_zero));

    let round = MetricLieGroupSpec::unimodular3(z(1), z(1), z(1));
    let k = sectional_curvatures(&riemann_curvature(&koszul_connection(&round), &round));
    assert!(k.values().all(|x| *x == q(1, 4)));
}

#[test]
fn gram_loader() {
    // |b_i|² = 4 on so(3): the orthonormal frame is b_i/2, curvature drops by 4.
    let json = r#"{"constants":{"dim":3,"brackets":[{"i":0,"j":1,"coeffs":[0,0,1]},{"i":0,"j":2,"coeffs":[0,-1,0]},{"i":1,"j":2,"coeffs":[1,0,0]}]},
        "gram":[[4,0,0],[0,4,0],[0,0,4]]}"#;
    let spec: MetricLieGroupSpec = serde_json::from_str(json).unwrap();
    let h = q(1, 2);
    assert_eq!(spec.milnor_lambda(), Some([h.clone(), h.clone(), h.clone()]));
    let k = sectional_curvatures(&riemann_curvature(&koszul_connection(&spec), &spec));
    assert_eq!(k.values().cloned().collect::<Vec<_>>(), milnor_oracle(&h, &h, &h).to_vec());

    let irrational = json.replace("[4,0,0]", "[2,0,0]");
    assert!(serde_json::from_str::<MetricLieGroupSpec>(&irrational).is_err());
}

#[test]
fn frame_and_constants_must_agree() {
    let frame = MatrixLieBasis::new(3, su2_frame_matrices()).unwrap();
    let sc = structure_constants_from_matrices(&frame).unwrap();
    let both = serde_json::json!({ "constants": sc, "frame": frame });
    assert!(serde_json::from_value::<MetricLieGroupSpec>(both).is_ok());
    let wrong = serde_json::json!({ "constants": StructureConstants::abelian(3), "frame": frame });
    assert!(serde_json::from_value::<MetricLieGroupSpec>(wrong).is_err());
}

// ---- isotropy ----

#[test]
fn su2_isotropy_is_klein_four() {
    let k = su2_isotropy();
    let sc = su2_spec().constants().clone();
    for m in &k {
        assert!(is_automorphism(&sc, m).unwrap());
        assert_eq!(m.transpose().mul(m).unwrap(), Matrix::identity(3));
    }
    let group = isotropy_group_closure(&k).unwrap();
    assert_eq!(group.len(), 4);
    for a in &group {
        assert_eq!(a.mul(a).unwrap(), Matrix::identity(3));
        for b in &group {
            let p = a.mul(b).unwrap();
            assert!(group.contains(&p));
            assert_eq!(p, b.mul(a).unwrap());
        }
    }
    // Any two non-identity elements multiply to the third.
    assert_eq!(k[1].mul(&k[2]).unwrap(), k[3]);
}

#[test]
fn closure_examples() {
    let i = Matrix::identity(3);
    assert_eq!(isotropy_group_closure(std::slice::from_ref(&i)).unwrap(), vec![i.clone()]);
    let inv = su2_isotropy()[1].clone();
    let g = isotropy_group_closure(std::slice::from_ref(&inv)).unwrap();
    assert_eq!(g.len(), 2);
    assert!(g.contains(&i) && g.contains(&inv));
    let shear = Matrix::from_ints(&[[1, 1], [0, 1]]);
    assert!(matches!(isotropy_group_closure(&[shear]), Err(Error::ClosureCapExceeded { cap: 64 })));
    let rot = Matrix::from_ints(&[[0, -1], [1, 0]]);
    assert!(matches!(isotropy_group_closure_with_cap(&[rot], 3), Err(Error::ClosureCapExceeded { cap: 3 })));
}

// ---- export ----

#[test]
fn su2_export_validates() {
    let d = su2_export();
    let rep = validate(&d);
    assert!(rep.valid(), "{:?}", rep.first_failure());
    assert!(check_bianchi(&d).unwrap().valid());
    assert!(d.torsion().is_zero());
    assert!(matches!(d.base(), BaseDescriptor::Homogeneous { isotropy } if isotropy.is_empty()));
    assert_eq!(d.g(), &so_pq_basis(3, 0).unwrap());
}

// Left translations are isometries. The Killing field they generate reads
// (u, ∇_u) at the identity frame, since the left-invariant frame turns by ∇_u
// against a parallel one, and it fixes every invariant function: ρ kills it.
#[test]
fn su2_anchor_vanishes_on_killing_fields() {
    let (spec, conn, _) = su2_curvature();
    let d = su2_export();
    let g = d.g();
    for u in 0..3 {
        let gamma = conn.matrix(u);
        let alpha = g.coordinates(&gamma).unwrap().unwrap();
        let s = Section::new(ints(&unit3(u)), alpha.clone());
        assert_eq!(anchor(&d, &s).unwrap(), zero_vec(3));
        // F(e_u) = −∇_{e_u}
        assert_eq!(d.anchor_map().col(u), alpha.iter().map(|x| -x).collect::<Vec<_>>());
    }
    assert_eq!(spec.dim(), 3);
}

fn unit3(i: usize) -> [i64; 3] {
    let mut v = [0; 3];
    v[i] = 1;
    v
}

// A zero anchor puts all of ℝ³ ⊕ 0 in its kernel, which cannot close under
// the bracket while R ≠ 0.
#[test]
fn su2_with_zero_anchor_fails_compatibility() {
    let d = su2_export();
    let zero = d.with_anchor_map(Matrix::zeros(3, 3)).unwrap();
    assert!(is_locally_symmetric_data(&zero));
    let rep = validate(&zero);
    assert!(!rep.valid());
    assert_eq!(rep.first_failure(), Some(ANCHOR_COMPATIBILITY));
    let w = rep.check(ANCHOR_COMPATIBILITY).unwrap().witness.clone().unwrap();
    assert_eq!(w.indices, vec![0, 1]);
    assert_eq!(w.residual, vec![q(-181, 16), z(0), z(0)]);
    // Unlike the correct anchor, which is not zero:
    assert!(!is_locally_symmetric_data(&d));
}

// Both signs of the anchor close; only the Killing-field argument above
// selects −∇.
#[test]
fn su2_with_opposite_anchor_also_closes() {
    let d = su2_export();
    let flipped = d.with_anchor_map(d.anchor_map().scale(&z(-1))).unwrap();
    assert!(validate(&flipped).valid());
}

#[test]
fn export_examples() {
    let flat = MetricLieGroupSpec::new(StructureConstants::abelian(3)).unwrap();
    let curv = riemann_curvature(&koszul_connection(&flat), &flat);
    let d = export_cartan_data(&flat, &curv, &[]).unwrap();
    assert!(validate(&d).valid());
    assert!(d.curvature().is_zero() && d.torsion().is_zero() && d.anchor_map().is_zero());
    assert!(is_locally_symmetric_data(&d));
    // Same bracket as the κ = 0 space form; only the base differs.
    let sf = space_form(3, &z(0), None).unwrap();
    assert_eq!((sf.g(), sf.curvature()), (d.g(), d.curvature()));

    let (spec, _, curv) = su2_curvature();
    let stretch = Matrix::diagonal(&[z(2), z(1), z(1)]);
    assert!(export_cartan_data(&spec, &curv, &[stretch]).is_err());
    // Orthogonal but not an automorphism of the λ = (8,2,½) algebra.
    let swap = Matrix::from_ints(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
    assert!(export_cartan_data(&spec, &curv, &[swap]).is_err());
}

#[test]
fn round_sphere_with_full_isotropy() {
    // The bi-invariant metric is isotropic: 𝔨 = so(3), the orbit is a point of so(3)/so(3).
    let spec = MetricLieGroupSpec::unimodular3(z(1), z(1), z(1));
    let curv = riemann_curvature(&koszul_connection(&spec), &spec);
    let algebra: Vec<Matrix> = so_pq_basis(3, 0).unwrap().basis().to_vec();
    let d = export_cartan_data_with_algebra(&spec, &curv, &[], &algebra).unwrap();
    assert_eq!(d.isotropy().dim(), 3);
    let rep = validate(&d);
    assert!(rep.valid(), "{:?}", rep.first_failure());
    assert!(check_bianchi(&d).unwrap().valid());
    // A symmetric matrix is not a skew derivation.
    assert!(export_cartan_data_with_algebra(&spec, &curv, &[], &[Matrix::identity(3)]).is_err());
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #[test]
    fn koszul_and_curvature_invariants(l1 in rational(), l2 in rational(), l3 in rational()) {
        let spec = MetricLieGroupSpec::unimodular3(l1.clone(), l2.clone(), l3.clone());
        let conn = koszul_connection(&spec);
        prop_assert_eq!(conn.metric_violation(), None);
        prop_assert_eq!(conn.torsion_violation(spec.constants()), None);
        let curv = riemann_curvature(&conn, &spec);
        prop_assert_eq!(curv.antisymmetry_violation(), None);
        prop_assert_eq!(curv.first_bianchi_violation(), None);
        prop_assert_eq!(curv.pair_symmetry_violation(), None);
        let k = sectional_curvatures(&curv);
        prop_assert_eq!(k.values().cloned().collect::<Vec<_>>(), milnor_oracle(&l1, &l2, &l3).to_vec());
    }

    // Unimodular left-invariant metrics export to data that validates and
    // satisfies both Bianchi identities, for any sign pattern of λ.
    #[test]
    fn exported_metrics_validate(l1 in -4i64..=4, l2 in -4i64..=4, l3 in -4i64..=4) {
        let spec = MetricLieGroupSpec::unimodular3(z(l1), z(l2), z(l3));
        let curv = riemann_curvature(&koszul_connection(&spec), &spec);
        let d = export_cartan_data(&spec, &curv, &[]).unwrap();
        prop_assert!(validate(&d).valid());
        prop_assert!(check_bianchi(&d).unwrap().valid());
    }
}
