use num_bigint::BigInt;
use proptest::prelude::*;

use turanham::engine::parse_decimal;
use turanham::exact::{binom, divisors, loop_partitions, totient};
use turanham::export;
use turanham::labelled::{b_labelled, total_linear_diagrams, LabelledTriangle};
use turanham::oracle;
use turanham::reflective::b_dihedral;
use turanham::rotational::{b_rotational, fixed_points, SectorTables};
use turanham::{cache, CountsRecord, Engine};

fn small_case() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=6).prop_flat_map(|d| (Just(d), 1usize..=(48 / d).min(12)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn binomial_symmetry_and_pascal(a in 1i64..120, b in 0i64..120) {
        prop_assert_eq!(binom(a, b), binom(a, a - b));
        prop_assert_eq!(binom(a, b), binom(a - 1, b - 1) + binom(a - 1, b));
    }

    #[test]
    fn totient_sums_over_divisors(m in 1u64..5000) {
        let sum: u64 = divisors(m).unwrap().into_iter().map(|q| totient(q).unwrap()).sum();
        prop_assert_eq!(sum, m);
    }

    #[test]
    fn loop_partitions_sum_to_k(d in 2usize..10, k in 1usize..9) {
        for p in loop_partitions(k, d, 1) {
            prop_assert_eq!(p.total_loops(), k);
            prop_assert!(p.reduced_sizes.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn triangle_rows_sum_to_all_diagrams(d in 2usize..=6, n in 0usize..=9) {
        let tri = LabelledTriangle::build(d, n).unwrap();
        let sum: BigInt = tri.row(n).unwrap().iter().sum();
        prop_assert_eq!(sum, total_linear_diagrams(d, n).unwrap());
    }

    #[test]
    fn counts_are_ordered((d, n) in small_case()) {
        let mut tables = SectorTables::new();
        let tri = LabelledTriangle::build(d, n).unwrap();
        let lab = b_labelled(d, n, &tri).unwrap();
        let rot = b_rotational(d, n, &mut tables).unwrap();
        let dih = b_dihedral(d, n, &mut tables).unwrap();
        prop_assert!(dih <= rot && rot <= lab && lab <= tri.get(n as i64, 0));
        prop_assert!(rot <= 2 * &dih);
        prop_assert!(lab <= &rot * (d * n));
        prop_assert_eq!(fixed_points(d, n, 1, &mut tables).unwrap(), lab);
    }

    #[test]
    fn fixed_points_shrink_along_divisor_chains((d, n) in small_case()) {
        // a diagram fixed by a rotation is fixed by all of its powers
        let mut tables = SectorTables::new();
        let dn = d * n;
        for m in divisors(dn as u64).unwrap() {
            for q in divisors(m).unwrap() {
                let fm = fixed_points(d, n, m as usize, &mut tables).unwrap();
                let fq = fixed_points(d, n, q as usize, &mut tables).unwrap();
                prop_assert!(fm <= fq, "f(dn,{}) > f(dn,{})", m, q);
            }
        }
    }

    #[test]
    fn oracle_chord_counts_match((d, n) in (2usize..=5).prop_flat_map(|d| (Just(d), 1usize..=10 / d))) {
        let tri = LabelledTriangle::build(d, n).unwrap();
        prop_assert_eq!(oracle::enumerate_chord_loopless(d, n).unwrap(), b_labelled(d, n, &tri).unwrap());
    }

    #[test]
    fn decimal_strings_round_trip(v in any::<i128>()) {
        let big = BigInt::from(v);
        prop_assert_eq!(parse_decimal(&big.to_string()).unwrap(), big);
    }

    #[test]
    fn json_and_csv_round_trip(d in 2usize..=6, n_max in 0usize..=6) {
        let recs = Engine::new().records(d, n_max).unwrap();
        let back: Vec<CountsRecord> = serde_json::from_str(&export::json(&recs).unwrap()).unwrap();
        prop_assert_eq!(&back, &recs);
        let csv = export::csv(&recs);
        prop_assert_eq!(turanham::fixtures::parse_csv(d, &csv).unwrap(), recs);
    }

    #[test]
    fn cache_round_trip_is_identical(d in 2usize..=5, n_max in 1usize..=6) {
        let mut e = Engine::new();
        e.records(d, n_max).unwrap();
        let text = cache::to_string(&e).unwrap();
        let back = cache::from_str(&text).unwrap();
        prop_assert_eq!(cache::to_string(&back).unwrap(), text);
    }

    #[test]
    fn cache_rejects_any_single_byte_change(pos in 0usize..4000, byte in any::<u8>()) {
        let mut e = Engine::new();
        e.records(2, 5).unwrap();
        let text = cache::to_string(&e).unwrap();
        let pos = pos % text.len();
        let mut bytes = text.clone().into_bytes();
        prop_assume!(bytes[pos] != byte);
        bytes[pos] = byte;
        let changed = String::from_utf8_lossy(&bytes);
        prop_assert!(cache::from_str(&changed).is_err());
    }
}
