use primecube_core::constants::{self, EULER_FACTOR_BOUNDS};
use primecube_core::numerics::{Decimal, Verdict, DEFAULT_PRECISION as P};
use primecube_core::series;

#[test]
fn tabulated_euler_factor_bounds_hold() {
    for (p, bound) in EULER_FACTOR_BOUNDS {
        let rec = series::euler_factor_min(p, P).unwrap();
        let v = rec.check_at_least(&Decimal::parse(bound).unwrap());
        assert_eq!(v, Verdict::Pass, "p = {p}: {} vs {bound}", rec.factor.lo_decimal(20));
    }
}

#[test]
fn product_blocks_clear_their_bounds() {
    let c = series::constant_c(P).unwrap();
    for (name, v) in c.verdicts() {
        assert_eq!(v, Verdict::Pass, "{name}");
    }
    assert!(c.c.check_at_least(&Decimal::parse(constants::SERIES_CONSTANT_BOUND).unwrap()).is_pass());
}
