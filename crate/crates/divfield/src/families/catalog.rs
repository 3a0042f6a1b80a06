//! The family table. Coefficients are `[a1, a2, a3, a4, a6]` in the parameter `t`.

use super::{Claim, Domain, Source, TwistRule};

pub(super) enum RowModel {
    Coeffs([&'static str; 5]),
    /// `y^2 + xy = x^3 - 36/(j - 1728) x - 1/(j - 1728)` with `j` the row's j-line.
    FromJLine,
    Twist(&'static str, TwistRule),
}

pub(super) struct Row {
    pub id: &'static str,
    pub source: Source,
    pub domain: Domain,
    pub model: RowModel,
    /// Numerator and denominator displays.
    pub jline: Option<(&'static str, &'static str)>,
    pub claims: &'static [Claim],
}

use Claim::*;
use RowModel::*;
use Source::*;

const XS5_NUM: &str = "(t^2+5t+5)^3 (t^4+5t^2+25)^3 (t^4+5t^3+20t^2+25t+25)^3";
const XS5_DEN: &str = "(t(t^4+5t^3+15t^2+25t+25))^5";

// Level-8 fields observed on the X58i/X58b and X183a/X183d samples. The X58 classes
// can become dependent (t = 2 gives (Z/2)^4); the X183 ones cannot.
const X58_CLASSES: &[&str] = &["t", "t^2 + 1", "t^2 - 1"];
const X58_FIELD: Claim = FieldOfClasses { n: 8, constant: &[-1, 2], in_t: X58_CLASSES, with_twist: false, generic_rank: 5 };
// Roots 6(t + 3), 6(t - 3), -12t; the differences give the level-4 classes.
const X8D_CLASSES: &[&str] = &["2t + 2", "2t - 2"];
const X183_FIELD: Claim =
    FieldOfClasses { n: 8, constant: &[-1, 2], in_t: &["t^4 + 1", "t^4 - 1"], with_twist: false, generic_rank: 4 };

pub(super) const ROWS: &[Row] = &[
    Row {
        id: "simplest-cubic",
        source: Printed,
        domain: Domain::Integer,
        model: Coeffs(["0", "-t", "0", "-(t+3)", "-1"]),
        jline: None,
        claims: &[Group { n: 2, factors: &[3] }],
    },
    Row {
        id: "X(3)",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs(["0", "0", "0", "-27t(t^3+8)", "54(t^6-20t^3-8)"]),
        jline: Some(("27t^3(t^3+8)^3", "(t^3-1)^3")),
        claims: &[PointOfOrder(3), Group { n: 3, factors: &[2] }, Field { n: 3, classes: &[-3] }, Cyclotomic(3)],
    },
    Row {
        id: "X(3)-twist",
        source: Control,
        domain: Domain::Rational,
        model: Twist("X(3)", TwistRule::OutsideDivisionField(3)),
        jline: None,
        claims: &[Group { n: 3, factors: &[2, 2] }],
    },
    Row {
        id: "X(5)",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs([
            "0",
            "0",
            "0",
            "-(t^20 - 228t^15 + 494t^10 + 228t^5 + 1)/48",
            "(t^30 + 522t^25 - 10005t^20 - 10005t^10 - 522t^5 + 1)/864",
        ]),
        jline: Some(("-(t^20 - 228t^15 + 494t^10 + 228t^5 + 1)^3", "t^5(t^10 + 11t^5 - 1)^5")),
        claims: &[Group { n: 5, factors: &[4] }, Cyclotomic(5)],
    },
    Row {
        id: "X(5)-twist",
        source: Control,
        domain: Domain::Rational,
        model: Twist("X(5)", TwistRule::AvoidClasses(&[1, 5])),
        jline: None,
        claims: &[Group { n: 5, factors: &[2, 4] }],
    },
    Row {
        id: "Xs(5)-jline",
        source: Printed,
        domain: Domain::Rational,
        model: FromJLine,
        jline: Some((XS5_NUM, XS5_DEN)),
        claims: &[IsogenyKernels { p: 5, at_least: 2 }, Abelian(5)],
    },
    Row {
        id: "X0(18)-jline",
        source: Printed,
        domain: Domain::Rational,
        model: FromJLine,
        jline: Some(("(t^3-2)^3 (t^9-6t^6-12t^3-8)^3", "t^9 (t^3-8)(t^3+1)^2")),
        claims: &[IsogenyKernels { p: 2, at_least: 1 }, IsogenyKernels { p: 3, at_least: 1 }],
    },
    Row {
        id: "Et6",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs([
            "0",
            "0",
            "0",
            "-27t^12 + 216t^9 - 6480t^6 + 12528t^3 - 432",
            "54t^18 - 648t^15 - 25920t^12 + 166320t^9 - 651888t^6 + 222912t^3 + 3456",
        ]),
        jline: Some((
            "(t^3 - 2)^3 (t^3 + 6t - 2)^3 (t^6 - 6t^4 - 4t^3 + 36t^2 + 12t + 4)^3",
            "(t - 2)^3 t^3 (t + 1)^6 (t^2 - t + 1)^6 (t^2 + 2t + 4)^3",
        )),
        claims: &[
            PointOfOrder(6),
            IsogenyKernels { p: 3, at_least: 2 },
            Group { n: 6, factors: &[2, 2] },
            IsogenousToJLine { degree: 3, jline: "X0(18)-jline", at: [1, 0, 0, 1] },
            IsogenousToJLine { degree: 6, jline: "X0(18)-jline", at: [0, -2, 1, 0] },
        ],
    },
    Row {
        id: "Et6-twist",
        source: Control,
        domain: Domain::Rational,
        model: Twist("Et6", TwistRule::OutsideDivisionField(6)),
        jline: None,
        claims: &[Group { n: 6, factors: &[2, 2, 2] }],
    },
    Row {
        id: "X60d",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs(["0", "0", "0", "-432t^8 + 1512t^4 - 27", "3456t^12 + 28512t^8 - 7128t^4 - 54"]),
        jline: None,
        claims: &[Group { n: 4, factors: &[2] }, Field { n: 4, classes: &[-1] }, TorsionAt { n: 4, pair: (1, 4) }],
    },
    Row {
        id: "X60d-twist",
        source: Control,
        domain: Domain::Rational,
        model: Twist("X60d", TwistRule::OutsideDivisionField(4)),
        jline: None,
        claims: &[Group { n: 4, factors: &[2, 2] }, TorsionAt { n: 4, pair: (1, 2) }],
    },
    Row {
        id: "X58i",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs(["0", "0", "0", "-27t^8 - 378t^4 - 27", "54t^12 - 1782t^8 - 1782t^4 + 54"]),
        jline: None,
        claims: &[
            Group { n: 4, factors: &[2] },
            Field { n: 4, classes: &[-1] },
            TorsionAt { n: 4, pair: (2, 4) },
            X58_FIELD,
            TorsionAt { n: 8, pair: (2, 4) },
        ],
    },
    Row {
        id: "X58i-twist4",
        source: Control,
        domain: Domain::Rational,
        model: Twist("X58i", TwistRule::OutsideDivisionField(4)),
        jline: None,
        claims: &[Group { n: 4, factors: &[2, 2] }, TorsionAt { n: 4, pair: (2, 2) }],
    },
    Row {
        id: "X58i-twist8",
        source: Control,
        domain: Domain::Rational,
        model: Twist("X58i", TwistRule::OutsideDivisionField(8)),
        jline: None,
        claims: &[
            FieldOfClasses { n: 8, constant: &[-1, 2], in_t: X58_CLASSES, with_twist: true, generic_rank: 6 },
            TorsionAt { n: 8, pair: (2, 2) },
        ],
    },
    Row {
        id: "X27f",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs(["0", "0", "0", "-432t^6 + 1512t^4 - 27t^2", "3456t^9 + 28512t^7 - 7128t^5 - 54t^3"]),
        jline: None,
        claims: &[FieldOfClasses { n: 4, constant: &[-1], in_t: &["t"], with_twist: false, generic_rank: 2 }, TorsionByClass { n: 4, generic: (1, 2), special: (1, 4), constant: &[-1], class: "t" }],
    },
    Row {
        id: "X27f-twist",
        source: Control,
        domain: Domain::Rational,
        model: Twist("X27f", TwistRule::OutsideDivisionField(4)),
        jline: None,
        claims: &[FieldOfClasses { n: 4, constant: &[-1], in_t: &["t"], with_twist: true, generic_rank: 3 }, TorsionAt { n: 4, pair: (1, 2) }],
    },
    Row {
        id: "X27h",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs(["0", "0", "0", "-432t^4 + 1512t^2 - 27", "3456t^6 + 28512t^4 - 7128t^2 - 54"]),
        jline: None,
        claims: &[FieldOfClasses { n: 4, constant: &[-1], in_t: &["t"], with_twist: false, generic_rank: 2 }, TorsionAt { n: 4, pair: (1, 4) }],
    },
    Row {
        id: "X24d",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs([
            "0",
            "0",
            "0",
            "-27t^8 - 81t^6 - 108t^4 - 81t^2 - 27",
            "54t^12 + 243t^10 + 324t^8 - 324t^4 - 243t^2 - 54",
        ]),
        jline: None,
        claims: &[FieldOfClasses { n: 4, constant: &[-1], in_t: &["t^2 + 1"], with_twist: false, generic_rank: 2 }, TorsionByClass { n: 4, generic: (2, 2), special: (2, 4), constant: &[-1], class: "t^2 + 1" }],
    },
    Row {
        id: "X24d-twist",
        source: Control,
        domain: Domain::Rational,
        model: Twist("X24d", TwistRule::OutsideDivisionField(4)),
        jline: None,
        claims: &[FieldOfClasses { n: 4, constant: &[-1], in_t: &["t^2 + 1"], with_twist: true, generic_rank: 3 }, TorsionAt { n: 4, pair: (2, 2) }],
    },
    Row {
        id: "X25n",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs(["0", "0", "0", "-27t^4 + 27t^2 - 27", "54t^6 - 81t^4 - 81t^2 + 54"]),
        jline: None,
        claims: &[FieldOfClasses { n: 4, constant: &[-1], in_t: &["t^2 - 1"], with_twist: false, generic_rank: 2 }, TorsionAt { n: 4, pair: (2, 4) }],
    },
    Row {
        id: "X8d",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs(["0", "0", "0", "-108t^2 - 324", "432t^3 - 3888t"]),
        jline: None,
        claims: &[
            FieldOfClasses { n: 4, constant: &[-1], in_t: X8D_CLASSES, with_twist: false, generic_rank: 3 },
            TorsionByClass { n: 4, generic: (2, 2), special: (2, 4), constant: &[], class: "2t + 2" },
        ],
    },
    Row {
        id: "X8d-twist",
        source: Control,
        domain: Domain::Rational,
        model: Twist("X8d", TwistRule::OutsideDivisionField(4)),
        jline: None,
        claims: &[
            FieldOfClasses { n: 4, constant: &[-1], in_t: X8D_CLASSES, with_twist: true, generic_rank: 4 },
            TorsionAt { n: 4, pair: (2, 2) },
        ],
    },
    Row {
        id: "X183a",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs([
            "0",
            "0",
            "0",
            "-108t^24 - 216t^20 - 1620t^16 - 3024t^12 - 1620t^8 - 216t^4 - 108",
            "432t^36 + 1296t^32 - 12960t^28 - 42336t^24 - 57024t^20 - 57024t^16 - 42336t^12 - 12960t^8 + 1296t^4 + 432",
        ]),
        jline: None,
        claims: &[Group { n: 8, factors: &[2, 2, 2, 2] }, X183_FIELD, TorsionAt { n: 8, pair: (2, 2) }],
    },
    Row {
        id: "X183d",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs(["0", "0", "0", "-27t^16 - 378t^8 - 27", "54t^24 - 1782t^16 - 1782t^8 + 54"]),
        jline: None,
        claims: &[Group { n: 8, factors: &[2, 2, 2, 2] }, X183_FIELD, TorsionAt { n: 8, pair: (2, 4) }],
    },
    Row {
        id: "X58b",
        source: Printed,
        domain: Domain::Rational,
        model: Coeffs(["0", "0", "0", "-108t^10 - 1512t^6 - 108t^2", "432t^15 - 14256t^11 - 14256t^7 + 432t^3"]),
        jline: None,
        claims: &[
            X58_FIELD,
            TorsionByClass { n: 8, generic: (2, 2), special: (2, 4), constant: &[-1], class: "2t" },
        ],
    },
];
