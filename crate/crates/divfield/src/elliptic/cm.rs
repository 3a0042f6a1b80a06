use super::WeierstrassCurve;
use crate::algebra_core::{rat, Rational};
use num_bigint::BigInt;
use num_traits::Zero;

/// A rational CM j-invariant with the discriminant of its order and of the CM field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CmRow {
    pub j: i64,
    pub order_disc: i32,
    pub field_disc: i32,
}

impl CmRow {
    pub fn tag(&self) -> String {
        format!("D={}", self.order_disc)
    }

    pub fn j_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.j))
    }
}

const fn row(j: i64, order_disc: i32, field_disc: i32) -> CmRow {
    CmRow { j, order_disc, field_disc }
}

/// The 13 CM j-invariants in Q.
pub const CM_TABLE: [CmRow; 13] = [
    row(0, -3, -3),
    row(54000, -12, -3),
    row(-12288000, -27, -3),
    row(1728, -4, -4),
    row(287496, -16, -4),
    row(-3375, -7, -7),
    row(16581375, -28, -7),
    row(8000, -8, -8),
    row(-32768, -11, -11),
    row(-884736, -19, -19),
    row(-884736000, -43, -43),
    row(-147197952000, -67, -67),
    row(-262537412640768000, -163, -163),
];

pub fn cm_recognize(j: &Rational) -> Option<CmRow> {
    if !j.is_integer() {
        return None;
    }
    CM_TABLE.iter().copied().find(|r| BigInt::from(r.j) == *j.numer())
}

/// A curve over Q with the given j-invariant.
pub fn curve_with_j(j: &Rational) -> WeierstrassCurve {
    if j.is_zero() {
        return WeierstrassCurve::short(rat(0), rat(1)).unwrap();
    }
    if *j == rat(1728) {
        return WeierstrassCurve::short(rat(1), rat(0)).unwrap();
    }
    let k = rat(1728) - j;
    WeierstrassCurve::short(rat(3) * j * &k, rat(2) * j * &k * &k).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::ratio;

    #[test]
    fn lookups() {
        assert_eq!(cm_recognize(&rat(0)).unwrap().field_disc, -3);
        assert_eq!(cm_recognize(&rat(1728)).unwrap().field_disc, -4);
        let r = cm_recognize(&rat(287496)).unwrap();
        assert_eq!((r.field_disc, r.order_disc), (-4, -16));
        assert_eq!(cm_recognize(&rat(1)), None);
        assert_eq!(cm_recognize(&ratio(1728, 7)), None);
    }

    #[test]
    fn factored_forms() {
        // 2^3 3^3 11^3 and -2^15 3 5^3
        assert_eq!(CM_TABLE[4].j, 8 * 27 * 1331);
        assert_eq!(CM_TABLE[2].j, -(1 << 15) * 3 * 125);
        assert_eq!(CM_TABLE[12].j, -(1i64 << 18) * 27 * 125 * 23 * 23 * 23 * 29 * 29 * 29);
    }

    #[test]
    fn curves_realize_j() {
        for r in CM_TABLE {
            assert_eq!(curve_with_j(&r.j_rational()).j, r.j_rational());
        }
        assert_eq!(curve_with_j(&ratio(5, 3)).j, ratio(5, 3));
    }
}
