use proptest::prelude::*;

use moebius_core::algebra::{log_of_integer, rational};
use moebius_core::arith::{build_sieve, named, pow_omega_sum, SieveTable};
use moebius_core::identities::{
    combinatoric_rhs, grid_sum, ordered_lhs, th15_lhs, th15_rhs, th1_lhs, th1_rhs, th2_lhs,
    th2_rhs, th3_lhs, th3_rhs, verify_identity, GridSumSpec, IdentityId, IdentityReport,
    MobiusPower, Params, WeightKind,
};
use moebius_core::oracle::naive_grid_sum;
use moebius_core::{Error, Int};
use std::sync::OnceLock;

fn sieve() -> &'static SieveTable {
    static S: OnceLock<SieveTable> = OnceLock::new();
    S.get_or_init(|| build_sieve(20_000).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grid_identities(r in 2u32..6, x in 1u64..3000) {
        let s = sieve();
        prop_assert_eq!(th1_lhs::<Int>(r, x, s).unwrap(), th1_rhs::<Int>(r, x, s).unwrap());
        prop_assert_eq!(th15_lhs::<Int>(r, x, s).unwrap(), th15_rhs::<Int>(r, x, s).unwrap());
    }

    #[test]
    fn machine_and_big_integers_agree(r in 2u32..5, x in 1u64..2000) {
        let s = sieve();
        let big: Int = th1_rhs(r, x, s).unwrap();
        let small: i64 = th1_rhs(r, x, s).unwrap();
        prop_assert_eq!(big, Int::from(small));
    }

    #[test]
    fn ordered_identity(r in 2u32..7, x in 1u64..500) {
        let s = sieve();
        prop_assert_eq!(ordered_lhs::<Int>(r, x, s).unwrap(), combinatoric_rhs::<Int>(r, x, s).unwrap());
    }

    #[test]
    fn additive_identity_any_weights(r in 2u32..5, f in prop::collection::vec(-50i64..50, 2..120)) {
        let x = f.len() as u64 - 1;
        prop_assert_eq!(th2_lhs(r, x, &f).unwrap(), th2_rhs(r, x, &f).unwrap());
    }

    #[test]
    fn log_sum_product_form(n in 1u64..20_000, k in 2u32..5) {
        let s = sieve();
        let f = named::inv_id_k(k);
        for e in [MobiusPower::One, MobiusPower::Two] {
            prop_assert_eq!(th3_lhs(n, e, &f, s).unwrap(), th3_rhs(n, e, &f, s).unwrap());
        }
    }

    #[test]
    fn log_is_additive(m in 1u64..140, n in 1u64..140) {
        let s = sieve();
        let sum = log_of_integer(m, s).unwrap() + log_of_integer(n, s).unwrap();
        prop_assert_eq!(sum, log_of_integer(m * n, s).unwrap());
    }
}

#[test]
fn pow_omega_special_values() {
    let s = sieve();
    // 0^ω(n) picks out n = 1
    assert_eq!(pow_omega_sum::<i64>(0, 20_000, s).unwrap(), 1);
    // 1^ω(n) counts
    assert_eq!(pow_omega_sum::<i64>(1, 20_000, s).unwrap(), 20_000);
}

#[test]
fn grid_sum_dispatch_matches_oracle() {
    let s = sieve();
    for (kind, f) in [
        (WeightKind::MobiusProduct, None),
        (WeightKind::MobiusSquareProduct, None),
        (WeightKind::AdditiveF, Some(named::id())),
    ] {
        let spec = GridSumSpec::new(3, 60, kind, f).unwrap();
        let fast: Int = grid_sum(&spec, s).unwrap();
        let id = |n: u64| n as i64;
        let oracle = naive_grid_sum(kind, 3, 60, Some(&id)).unwrap();
        assert_eq!(fast, oracle, "{kind:?}");
    }
}

#[test]
fn oracle_guard() {
    assert!(matches!(
        naive_grid_sum(WeightKind::MobiusProduct, 3, 10_000, None),
        Err(Error::Capacity(_))
    ));
}

#[test]
fn reports_roundtrip_through_json() {
    let s = sieve();
    let cases = [
        ("th15", Params::new().with("r", 4).with("x", 5000)),
        (
            "th2",
            Params::new().with("r", 3).with("x", 500).with("f", "id"),
        ),
        ("cor3", Params::new().with("r", 4).with("x", 300)),
        ("cor9.6", Params::new().with("n", 2310)),
        ("lemma.le10", Params::new().with("r", 2).with("x", 50)),
    ];
    for (id, p) in cases {
        let id: IdentityId = id.parse().unwrap();
        let rep = verify_identity(id, &p, s).unwrap();
        assert!(rep.equal, "{id}");
        let json = serde_json::to_string(&rep).unwrap();
        let back: IdentityReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
    }
}

#[test]
fn rational_lemma_values() {
    let s = sieve();
    let rep = verify_identity(
        "le6".parse().unwrap(),
        &Params::new().with("n", 30).with("k", "-1"),
        s,
    )
    .unwrap();
    assert!(rep.equal);
    assert_eq!(
        rep.rhs,
        moebius_core::identities::Value::Rational(rational(0, 1))
    );
}
