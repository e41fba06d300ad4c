mod common;

use proptest::prelude::*;
use reallin::{lift_vector, real_inner, rel_diff, unlift_vector, C64};

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3).prop_map(|(re, im)| C64::new(re, im)), len)
}

fn pair() -> impl Strategy<Value = (Vec<C64>, Vec<C64>)> {
    (1usize..32).prop_flat_map(|n| (complex_vec(n), complex_vec(n)))
}

proptest! {
    #[test]
    fn lift_round_trips(x in (1usize..64).prop_flat_map(complex_vec)) {
        let lifted = lift_vector(&x);
        prop_assert_eq!(lifted.len(), 2 * x.len());
        prop_assert_eq!(unlift_vector(&lifted).unwrap(), x);
    }

    #[test]
    fn real_inner_is_lifted_dot((p, q) in pair()) {
        let lhs = real_inner(&p, &q).unwrap();
        let dot: f64 = lift_vector(&p).iter().zip(lift_vector(&q)).map(|(a, b)| a * b).sum();
        prop_assert!((lhs - dot).abs() <= 1e-12 * (1.0 + dot.abs()));
        prop_assert!((lhs - real_inner(&q, &p).unwrap()).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn real_inner_ignores_rotation_of_both((p, q) in pair(), theta in 0.0f64..6.3) {
        let w = C64::from_polar(1.0, theta);
        let pr: Vec<C64> = p.iter().map(|z| z * w).collect();
        let qr: Vec<C64> = q.iter().map(|z| z * w).collect();
        let a = real_inner(&p, &q).unwrap();
        let b = real_inner(&pr, &qr).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
    }

    #[test]
    fn rel_diff_is_symmetric((p, q) in pair()) {
        let a = rel_diff(&p, &q).unwrap();
        let b = rel_diff(&q, &p).unwrap();
        prop_assert!((a - b).abs() <= 1e-14 * (1.0 + a));
        prop_assert_eq!(rel_diff(&p, &p).unwrap(), 0.0);
    }
}

#[test]
fn odd_lifted_length_is_rejected() {
    assert!(unlift_vector(&[1.0, 2.0, 3.0]).is_err());
}

#[test]
fn real_inner_examples() {
    let p = [C64::new(1.0, 2.0)];
    let q = [C64::new(3.0, -1.0)];
    assert_eq!(real_inner(&p, &q).unwrap(), 1.0);
    assert!(real_inner(&p, &[C64::new(0.0, 0.0); 2]).is_err());
}
