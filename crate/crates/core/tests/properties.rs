use num_bigint::BigInt;
use num_integer::Integer;
use octica::data::reference_data;
use octica::lattices::{realify_form, to_real_coords};
use octica::matrix::{bilinear_form, hermitian_form};
use octica::mod2::{induced_involution, reduce_vector, F2QuadraticSpace};
use octica::scalars::GaussInt;
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussInt> {
    (-30i64..=30, -30i64..=30).prop_map(|(a, b)| GaussInt::new(a, b))
}

fn vec6() -> impl Strategy<Value = Vec<GaussInt>> {
    prop::collection::vec(gauss(), 6)
}

fn add(x: &[GaussInt], y: &[GaussInt]) -> Vec<GaussInt> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn scale(a: &GaussInt, x: &[GaussInt]) -> Vec<GaussInt> {
    x.iter().map(|z| a * z).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hermitian_symmetry(x in vec6(), y in vec6()) {
        let g = reference_data().data.lambda;
        prop_assert_eq!(hermitian_form(&g, &x, &y), hermitian_form(&g, &y, &x).conj());
        prop_assert!(hermitian_form(&g, &x, &x).im == BigInt::from(0));
    }

    #[test]
    fn sesquilinear(x in vec6(), y in vec6(), z in vec6(), a in gauss()) {
        let g = reference_data().data.lambda;
        let lhs = hermitian_form(&g, &x, &add(&scale(&a, &y), &z));
        let rhs = &a * &hermitian_form(&g, &x, &y) + hermitian_form(&g, &x, &z);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(hermitian_form(&g, &scale(&a, &x), &y), &a.conj() * &hermitian_form(&g, &x, &y));
    }

    #[test]
    fn anti_isometry_axioms(x in vec6(), y in vec6(), a in gauss(), i in 0usize..5) {
        let d = reference_data().data;
        let chi = d.anti(i);
        let g = &d.lambda;
        let (cx, cy) = (chi.apply(&x), chi.apply(&y));
        prop_assert_eq!(hermitian_form(g, &cx, &cy), hermitian_form(g, &x, &y).conj());
        prop_assert_eq!(chi.apply(&cx), x.clone());
        prop_assert_eq!(chi.apply(&scale(&a, &x)), scale(&a.conj(), &cx));
        prop_assert_eq!(chi.apply(&add(&x, &y)), add(&cx, &cy));
    }

    #[test]
    fn realified_form_is_real_part(x in vec6(), y in vec6()) {
        let g = reference_data().data.lambda;
        let r = realify_form(&g);
        let value = bilinear_form(&r, &to_real_coords(&x), &to_real_coords(&y));
        prop_assert_eq!(value, hermitian_form(&g, &x, &y).re);
    }

    #[test]
    fn reduction_is_additive(x in vec6(), y in vec6(), z in vec6()) {
        prop_assert_eq!(reduce_vector(&add(&x, &y)), reduce_vector(&x) ^ reduce_vector(&y));
        prop_assert_eq!(reduce_vector(&scale(&GaussInt::one_plus_i(), &z)), 0);
        prop_assert_eq!(reduce_vector(&scale(&GaussInt::i(), &x)), reduce_vector(&x));
    }

    #[test]
    fn q_is_half_norm_mod_two(x in vec6(), y in vec6()) {
        let lam = reference_data().data.lambda().unwrap();
        let sp = F2QuadraticSpace::from_lattice(&lam).unwrap();
        let h = lam.q_norm(&x);
        prop_assert!(h.is_even());
        let half: BigInt = h / 2;
        prop_assert_eq!(u8::from(half.is_odd()), sp.q(reduce_vector(&x)));
        let (a, b) = (reduce_vector(&x), reduce_vector(&y));
        prop_assert_eq!(sp.b(a, b), sp.q(a ^ b) ^ sp.q(a) ^ sp.q(b));
    }

    #[test]
    fn reduction_commutes_with_chi(x in vec6(), i in 0usize..5) {
        let chi = reference_data().data.anti(i);
        let phi = induced_involution(&chi).unwrap();
        prop_assert_eq!(reduce_vector(&chi.apply(&x)), phi.apply(reduce_vector(&x)));
    }

    #[test]
    fn gaussian_division(a in gauss(), b in gauss()) {
        prop_assume!(!(b.re == BigInt::from(0) && b.im == BigInt::from(0)));
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&q * &b + r.clone(), a.clone());
        prop_assert!(r.norm() < b.norm());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }
}
