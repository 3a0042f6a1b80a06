//! Recomputes the rows of the four result tables and diffs them against the printed values.

use super::fixtures::FixtureFile;
use crate::algebra_core::{rat, Rational};
use crate::division_fields::{classify, ClassificationReport, GroupType};
use crate::elliptic::{curve_with_j, torsion_over_q, TorsionType, WeierstrassCurve};
use crate::multiquad::{mq_field, MqField};
use serde::Serialize;
use std::sync::Arc;

/// A printed division field.
#[derive(Clone, Copy, Debug)]
pub enum PrintedField {
    /// `Q(sqrt(d) : d in classes)`.
    Classes(&'static [i64]),
    /// Compared with the symbolic description produced by the classifier.
    Symbolic(&'static str),
    /// Not constructed here; only the group is compared.
    GroupOnly(&'static str),
}

/// A row of the division-field tables for n = 2, 3, 4, 5, 6, 8.
#[derive(Clone, Copy, Debug)]
pub struct LevelRow {
    pub table: u8,
    pub n: u32,
    /// Cyclic factors of the Galois group.
    pub group: &'static [u32],
    /// `E(Q)[n]` as `(m1, m2)`.
    pub torsion: (u32, u32),
    pub family: &'static str,
    pub label: &'static str,
    pub field: PrintedField,
}

const fn row(
    table: u8,
    n: u32,
    group: &'static [u32],
    torsion: (u32, u32),
    family: &'static str,
    label: &'static str,
    field: PrintedField,
) -> LevelRow {
    LevelRow { table, n, group, torsion, family, label, field }
}

use PrintedField::{Classes as F, GroupOnly, Symbolic};

const Z8_15_17: PrintedField = F(&[-1, 2, 15, 17]);
const Z8_3_5: PrintedField = F(&[-1, 2, 3, 5]);
const Z8_3_7: PrintedField = F(&[-1, 2, 3, 7]);
const Z8_5_41: PrintedField = F(&[-1, 2, 5, 41]);
const Z8_3_5_13: PrintedField = F(&[-1, 2, 3, 5, 13]);
const E4: &[u32] = &[2, 2, 2, 2];
const E5: &[u32] = &[2, 2, 2, 2, 2];

pub const LEVEL_ROWS: &[LevelRow] = &[
    row(2, 3, &[2], (1, 3), "", "19a1", F(&[-3])),
    row(2, 3, &[2, 2], (1, 1), "", "175b2", F(&[-3, 5])),
    row(2, 5, &[4], (1, 1), "", "275b2", Symbolic("Q(zeta5)")),
    row(2, 5, &[4], (1, 5), "", "11a1", Symbolic("Q(zeta5)")),
    row(2, 5, &[2, 4], (1, 1), "", "704a2", Symbolic("Q(zeta5, sqrt(2))")),
    row(2, 5, &[4, 4], (1, 1), "", "18176b2", GroupOnly("Q(zeta5, a), a^4 - 4a^2 + 2 = 0")),
    row(2, 6, &[2, 2], (1, 2), "", "98a3", F(&[-3, -7])),
    row(2, 6, &[2, 2], (1, 6), "", "14a1", F(&[-3, -7])),
    row(2, 6, &[2, 2, 2], (1, 2), "", "448c3", F(&[-3, 2, -7])),
    row(3, 2, &[], (2, 2), "X8", "315b2", F(&[])),
    row(3, 2, &[2], (1, 2), "X6", "69a1", F(&[-23])),
    row(3, 2, &[3], (1, 1), "X2", "196a1", GroupOnly("Q(a), a^3 - a^2 - 2a + 1 = 0")),
    row(3, 4, &[2], (1, 4), "X60d", "40a4", F(&[-1])),
    row(3, 4, &[2], (2, 4), "X58i", "195a3", F(&[-1])),
    row(3, 4, &[2, 2], (1, 2), "X60", "360e4", F(&[-1, 3])),
    row(3, 4, &[2, 2], (1, 2), "X27f", "936i4", F(&[-1, 3])),
    row(3, 4, &[2, 2], (1, 4), "X27h", "205a4", F(&[-1, 10])),
    row(3, 4, &[2, 2], (2, 2), "X58", "6435f3", F(&[-1, 3])),
    row(3, 4, &[2, 2], (2, 2), "X24d", "2200f2", F(&[-1, 5])),
    row(3, 4, &[2, 2], (2, 2), "X24e", "205a2", F(&[-1, 41])),
    row(3, 4, &[2, 2], (2, 2), "X25h", "231a3", F(&[-1, 7])),
    row(3, 4, &[2, 2], (2, 2), "X25i", "1287e4", F(&[-1, 3])),
    row(3, 4, &[2, 2], (2, 4), "X25n", "231a2", F(&[-1, 33])),
    row(3, 4, &[2, 2, 2], (1, 2), "X27", "1845c4", F(&[-1, 3, 10])),
    row(3, 4, &[2, 2, 2], (2, 2), "X24", "1845c2", F(&[-1, 3, 41])),
    row(3, 4, &[2, 2, 2], (2, 2), "X25", "3465e2", F(&[-1, 3, 35])),
    row(3, 4, &[2, 2, 2], (2, 2), "X8b", "1089g2", F(&[-1, 3, 11])),
    row(3, 4, &[2, 2, 2], (2, 2), "X8d", "33a1", F(&[-1, 3, 11])),
    row(3, 4, E4, (2, 2), "X8", "315b2", F(&[-1, 3, 5, 7])),
    row(4, 8, E4, (2, 2), "X183a", "277440dv4", Z8_15_17),
    row(4, 8, E4, (2, 2), "X183c", "130050bu3", Z8_15_17),
    row(4, 8, E4, (2, 2), "X183e", "16320bb3", Z8_15_17),
    row(4, 8, E4, (2, 2), "X183h", "8670v3", Z8_15_17),
    row(4, 8, E4, (2, 2), "X183k", "16320bt4", Z8_15_17),
    row(4, 8, E4, (2, 2), "X183l", "69360cb3", Z8_15_17),
    row(4, 8, E4, (2, 2), "X187a", "4800b3", Z8_3_5),
    row(4, 8, E4, (2, 2), "X187b", "2880r4", Z8_3_5),
    row(4, 8, E4, (2, 2), "X187c", "225c4", Z8_3_5),
    row(4, 8, E4, (2, 2), "X187e", "960g3", Z8_3_5),
    row(4, 8, E4, (2, 2), "X187f", "14400y4", Z8_3_5),
    row(4, 8, E4, (2, 2), "X187g", "45a4", Z8_3_5),
    row(4, 8, E4, (2, 2), "X187h", "75b3", Z8_3_5),
    row(4, 8, E4, (2, 2), "X187i", "960i4", Z8_3_5),
    row(4, 8, E4, (2, 2), "X187j", "1200j4", Z8_3_5),
    row(4, 8, E4, (2, 2), "X187l", "4800cd4", Z8_3_5),
    row(4, 8, E4, (2, 2), "X189a", "141120el3", Z8_3_7),
    row(4, 8, E4, (2, 2), "X189b", "20160ce4", Z8_3_7),
    row(4, 8, E4, (2, 2), "X189c", "1470k4", Z8_3_7),
    row(4, 8, E4, (2, 2), "X189h", "47040dm3", Z8_3_7),
    row(4, 8, E4, (2, 2), "X189i", "6720cd4", Z8_3_7),
    row(4, 8, E4, (2, 2), "X189j", "4410r3", Z8_3_7),
    row(4, 8, E4, (2, 2), "X189k", "630c4", Z8_3_7),
    row(4, 8, E4, (2, 2), "X189l", "6720c3", Z8_3_7),
    row(4, 8, E4, (2, 2), "X183b", "196800by3", Z8_5_41),
    row(4, 8, E4, (2, 2), "X183f", "252150c4", Z8_5_41),
    row(4, 8, E4, (2, 2), "X183g", "6150n3", Z8_5_41),
    row(4, 8, E4, (2, 2), "X183j", "50430z4", Z8_5_41),
    row(4, 8, E4, (2, 4), "X183d", "510e3", Z8_15_17),
    row(4, 8, E4, (2, 4), "X183i", "1230f3", Z8_5_41),
    row(4, 8, E4, (2, 4), "X187d", "15a1", Z8_3_5),
    row(4, 8, E4, (2, 4), "X187k", "240d4", Z8_3_5),
    row(4, 8, E4, (2, 4), "X189d", "210e3", Z8_3_7),
    row(4, 8, E4, (2, 4), "X189e", "1680p4", Z8_3_7),
    row(4, 8, E5, (2, 2), "X183", "1530c4", F(&[-1, 2, 3, 5, 17])),
    row(4, 8, E5, (2, 2), "X187", "735e4", F(&[-1, 2, 3, 5, 7])),
    row(4, 8, E5, (2, 2), "X189", "25410bj3", F(&[-1, 2, 3, 7, 11])),
    row(4, 8, E5, (2, 2), "X58a", "2535f3", Z8_3_5_13),
    row(4, 8, E5, (2, 2), "X58b", "585f3", Z8_3_5_13),
    row(4, 8, E5, (2, 2), "X58c", "7605p3", Z8_3_5_13),
    row(4, 8, E5, (2, 2), "X58d", "2925g3", Z8_3_5_13),
    row(4, 8, E5, (2, 2), "X58e", "12480a3", Z8_3_5_13),
    row(4, 8, E5, (2, 2), "X58f", "46800cw4", Z8_3_5_13),
    row(4, 8, E5, (2, 2), "X58g", "38025bb4", Z8_3_5_13),
    row(4, 8, E5, (2, 2), "X58h", "40560bg4", Z8_3_5_13),
    row(4, 8, E5, (2, 2), "X58j", "187200eh4", Z8_3_5_13),
    row(4, 8, E5, (2, 2), "X58k", "975a3", Z8_3_5_13),
    row(4, 8, E5, (2, 4), "X58i", "195a3", Z8_3_5_13),
    row(4, 8, &[2, 2, 2, 2, 2, 2], (2, 2), "X58", "6435f3", F(&[-1, 2, 3, 5, 11, 13])),
];

/// Printed fields known to be wrong elsewhere for the same curve, with the explanation.
const ERRATA: &[(&str, u32, &[i64], &str)] = &[(
    "15a1",
    8,
    &[-1, 2, 3, 7],
    "15a1 is also printed with Q(E[8]) = Q(zeta8, sqrt(3), sqrt(7)); sqrt(7) would ramify at 7, \
     which does not divide the conductor 15, so that variant is an erratum",
)];

/// How to build the representative of a CM row.
#[derive(Clone, Copy, Debug)]
pub enum CmShape {
    /// `y^2 = x^3 + a4 x + a6`.
    Short(i64, i64),
    /// `curve_with_j(j)`.
    J(i128),
}

/// A row of the CM table.
#[derive(Clone, Copy, Debug)]
pub struct CmRowSpec {
    pub d_k: i64,
    pub description: &'static str,
    pub shape: CmShape,
    /// `None` for an S3 extension.
    pub two_field: Option<&'static [i64]>,
    /// Largest abelian level with its field.
    pub largest_abelian: Option<(u32, &'static [i64])>,
    /// Largest `n` with `Q(E[n]) = Q(zeta_n)`.
    pub cyclotomic: Option<u32>,
}

const fn cm(
    d_k: i64,
    description: &'static str,
    shape: CmShape,
    two_field: Option<&'static [i64]>,
    largest_abelian: Option<(u32, &'static [i64])>,
    cyclotomic: Option<u32>,
) -> CmRowSpec {
    CmRowSpec { d_k, description, shape, two_field, largest_abelian, cyclotomic }
}

use CmShape::{Short, J};

/// One representative per row; `t = 1` and `s = 2` where the row has a parameter.
pub const CM_ROWS: &[CmRowSpec] = &[
    cm(-3, "y^2 = x^3 + t^3", Short(0, 1), Some(&[-3]), Some((2, &[-3])), None),
    cm(-3, "y^2 = x^3 + 16t^3", Short(0, 16), None, Some((3, &[-3])), Some(3)),
    cm(-3, "y^2 = x^3 + s, s not t^3, 16t^3", Short(0, 3), None, None, None),
    cm(-3, "j = 2^4 3^3 5^3", J(54000), Some(&[3]), Some((2, &[3])), None),
    cm(-3, "j = -2^15 3 5^3", J(-12288000), None, None, None),
    cm(-4, "y^2 = x^3 + t^2 x", Short(1, 0), Some(&[-1]), Some((4, &[-1, 2])), None),
    cm(-4, "y^2 = x^3 - t^2 x", Short(-1, 0), Some(&[]), Some((4, &[-1, 2])), Some(2)),
    cm(-4, "y^2 = x^3 + s x, s not +-t^2", Short(2, 0), Some(&[-2]), Some((2, &[-2])), None),
    cm(-4, "j = 2^3 3^3 11^3", J(287496), Some(&[2]), Some((2, &[2])), None),
    cm(-7, "j = -3^3 5^3", J(-3375), Some(&[-7]), Some((2, &[-7])), None),
    cm(-7, "j = 3^3 5^3 17^3", J(16581375), Some(&[7]), Some((2, &[7])), None),
    cm(-8, "j = 2^6 5^3", J(8000), Some(&[2]), Some((2, &[2])), None),
    cm(-11, "j = -2^15", J(-32768), None, None, None),
    cm(-19, "j = -2^15 3^3", J(-884736), None, None, None),
    cm(-43, "j = -2^18 3^3 5^3", J(-884736000), None, None, None),
    cm(-67, "j = -2^15 3^3 5^3 11^3", J(-147197952000), None, None, None),
    cm(-163, "j = -2^18 3^3 5^3 23^3 29^3", J(-262537412640768000), None, None, None),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Agree,
    /// Disagrees with one printed value that is a documented erratum.
    AgreeWithErratum,
    Disagree,
    /// No coefficients for the label.
    Skipped,
}

/// Outcome for one table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowDiff {
    pub table: u8,
    pub row: String,
    pub n: Option<u32>,
    pub status: RowStatus,
    pub printed: String,
    pub computed: String,
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RowDiff {
    pub fn is_failure(&self) -> bool {
        self.status == RowStatus::Disagree
    }

    pub fn line(&self) -> String {
        let status = match self.status {
            RowStatus::Agree => "agree",
            RowStatus::AgreeWithErratum => "agree (erratum)",
            RowStatus::Disagree => "DISAGREE",
            RowStatus::Skipped => "skipped",
        };
        let mut s = format!("table {} {:<22} {:<16} printed {}", self.table, self.row, status, self.printed);
        if self.status != RowStatus::Skipped {
            s += &format!(" | computed {}", self.computed);
        }
        for m in &self.mismatches {
            s += &format!("\n    mismatch: {m}");
        }
        if let Some(n) = &self.note {
            s += &format!("\n    note: {n}");
        }
        s
    }
}

fn field_of(classes: &[i64]) -> Arc<MqField> {
    mq_field(&classes.iter().map(|&d| rat(d)).collect::<Vec<_>>()).expect("printed classes are independent enough")
}

fn field_text(classes: &[i64]) -> String {
    field_of(classes).name()
}

fn printed_text(r: &LevelRow) -> String {
    let field = match r.field {
        PrintedField::Classes(c) => field_text(c),
        PrintedField::Symbolic(s) | PrintedField::GroupOnly(s) => s.to_string(),
    };
    let (a, b) = r.torsion;
    format!("{}, E(Q)[{}] = {}, {field}", GroupType::from_cyclic_factors(r.group), r.n, TorsionType::new(a, b))
}

fn computed_text(rep: &ClassificationReport, tors: &TorsionType) -> String {
    let field = rep.field.as_ref().map_or("-".to_string(), |f| f.to_string());
    format!("{}, E(Q)[{}] = {tors}, {field}", rep.group, rep.n)
}

/// Diff of one row against a curve.
pub fn diff_level_row(r: &LevelRow, e: &WeierstrassCurve) -> RowDiff {
    let rep = classify(e, r.n).expect("table levels are constructive");
    let tors = torsion_over_q(e).structure.n_torsion(r.n);
    let mut mismatches = Vec::new();
    let want_group = GroupType::from_cyclic_factors(r.group);
    if !rep.is_abelian() || rep.group != want_group {
        mismatches.push(format!("group: printed {want_group}, computed {}", rep.group));
    }
    let want_tors = TorsionType::new(r.torsion.0, r.torsion.1);
    if tors != want_tors {
        mismatches.push(format!("torsion: printed {want_tors}, computed {tors}"));
    }
    let mut note = None;
    match r.field {
        PrintedField::Classes(c) => {
            let want = field_of(c);
            match rep.mq_field() {
                Some(k) if **k == *want => {}
                got => mismatches.push(format!(
                    "field: printed {}, computed {}",
                    want.name(),
                    got.map_or("non-multiquadratic".to_string(), |k| k.name())
                )),
            }
            if let Some((_, _, other, why)) = ERRATA.iter().find(|(l, n, _, _)| *l == r.label && *n == r.n) {
                let matches_other = rep.mq_field().is_some_and(|k| **k == *field_of(other));
                note = Some(format!(
                    "{why}; computed field {} {}",
                    if matches_other { "matches the erratum variant" } else { "matches this row" },
                    rep.mq_field().map_or("-".to_string(), |k| k.name())
                ));
            }
        }
        PrintedField::Symbolic(s) => {
            let got = rep.field.as_ref().map(|f| f.to_string()).unwrap_or_default();
            if got != s {
                mismatches.push(format!("field: printed {s}, computed {got}"));
            }
        }
        PrintedField::GroupOnly(s) => note = Some(format!("field {s} is compared through its group only")),
    }
    let status = if mismatches.is_empty() {
        if note.as_deref().is_some_and(|n| n.contains("erratum")) {
            RowStatus::AgreeWithErratum
        } else {
            RowStatus::Agree
        }
    } else {
        RowStatus::Disagree
    };
    RowDiff {
        table: r.table,
        row: format!("{} {}", r.family, r.label).trim().to_string(),
        n: Some(r.n),
        status,
        printed: printed_text(r),
        computed: computed_text(&rep, &tors),
        mismatches,
        note,
    }
}

/// All rows of table 2, 3 or 4; rows whose label has no coefficients are skipped.
pub fn diff_level_table(table: u8, fixtures: &FixtureFile) -> Vec<RowDiff> {
    LEVEL_ROWS
        .iter()
        .filter(|r| r.table == table)
        .map(|r| match fixtures.get(r.label) {
            Some(fx) => diff_level_row(r, &fx.curve),
            None => RowDiff {
                table,
                row: format!("{} {}", r.family, r.label).trim().to_string(),
                n: Some(r.n),
                status: RowStatus::Skipped,
                printed: printed_text(r),
                computed: String::new(),
                mismatches: vec![],
                note: Some(format!("no coefficients for {}; supply them with --fixtures", r.label)),
            },
        })
        .collect()
}

pub fn cm_representative(shape: CmShape) -> WeierstrassCurve {
    match shape {
        Short(a4, a6) => WeierstrassCurve::short(rat(a4), rat(a6)).expect("nonsingular representative"),
        J(j) => curve_with_j(&Rational::from_integer(j.into())),
    }
}

fn level_field_text(n: u32, classes: &[i64]) -> String {
    format!("Q(E[{n}]) = {}", field_text(classes))
}

/// Diff of one CM row; levels 2, 3, 4, 5, 6, 8 are classified.
pub fn diff_cm_row(spec: &CmRowSpec) -> RowDiff {
    let e = cm_representative(spec.shape);
    let reports: Vec<ClassificationReport> = [2, 3, 4, 5, 6, 8].iter().map(|&n| classify(&e, n).unwrap()).collect();
    let mut mismatches = Vec::new();

    let two = &reports[0];
    let two_text = |f: Option<&[i64]>| f.map_or("S3".to_string(), field_text);
    let two_ok = match spec.two_field {
        None => two.group == GroupType::S3,
        Some(c) => two.mq_field().is_some_and(|k| **k == *field_of(c)),
    };
    let two_got = if two.group == GroupType::S3 { "S3".to_string() } else { two.field.as_ref().map_or("-".into(), |f| f.to_string()) };
    if !two_ok {
        mismatches.push(format!("Q(E[2]): printed {}, computed {two_got}", two_text(spec.two_field)));
    }

    let largest = reports.iter().filter(|r| r.is_abelian()).max_by_key(|r| r.n);
    let largest_got = largest.map_or("none".to_string(), |r| {
        format!("Q(E[{}]) = {}", r.n, r.field.as_ref().map_or("-".into(), |f| f.to_string()))
    });
    let largest_ok = match (spec.largest_abelian, largest) {
        (None, None) => true,
        (Some((n, c)), Some(r)) => r.n == n && r.mq_field().is_some_and(|k| **k == *field_of(c)),
        _ => false,
    };
    let largest_want = spec.largest_abelian.map_or("none".to_string(), |(n, c)| level_field_text(n, c));
    if !largest_ok {
        mismatches.push(format!("largest abelian: printed {largest_want}, computed {largest_got}"));
    }

    let cyclo = reports.iter().filter(|r| r.cyclotomic).map(|r| r.n).max();
    if cyclo != spec.cyclotomic {
        mismatches.push(format!("largest cyclotomic: printed {:?}, computed {:?}", spec.cyclotomic, cyclo));
    }
    let cyclo_text = |c: Option<u32>| c.map_or("none".to_string(), |n| format!("Q(E[{n}]) = Q(zeta{n})"));

    RowDiff {
        table: 1,
        row: format!("d_K = {}: {}", spec.d_k, spec.description),
        n: None,
        status: if mismatches.is_empty() { RowStatus::Agree } else { RowStatus::Disagree },
        printed: format!("Q(E[2]) {}; largest abelian {largest_want}; {}", two_text(spec.two_field), cyclo_text(spec.cyclotomic)),
        computed: format!("Q(E[2]) {two_got}; largest abelian {largest_got}; {} [{}]", cyclo_text(cyclo), e),
        mismatches,
        note: None,
    }
}

pub fn diff_cm_table() -> Vec<RowDiff> {
    CM_ROWS.iter().map(diff_cm_row).collect()
}

/// Labels a table needs coefficients for.
pub fn table_labels(table: u8) -> Vec<&'static str> {
    let mut out: Vec<&str> = LEVEL_ROWS.iter().filter(|r| r.table == table).map(|r| r.label).collect();
    out.dedup();
    out
}
