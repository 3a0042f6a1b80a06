//! Per-level classification of `Q(E[n])` for curves over Q.

mod classify;
mod cm;
mod group;

pub use classify::{classify2, classify3, classify4, classify5, classify6, classify8};
pub use cm::{cm_expectation, CmExpectation};
pub use group::{in_theorem_table, invariant_factors, theorem_groups, GroupType};

use crate::algebra_core::format_rational;
use crate::elliptic::WeierstrassCurve;
use crate::frobenius::{
    certify_fingerprint, fingerprint_from_samples, frobenius_samples, Certificate, FrobeniusSample, DEFAULT_PRIME_BOUND,
};
use crate::multiquad::{mq_field, MqField};
use crate::algebra_core::rat;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Levels reported by [`classify_all`].
pub const ALL_LEVELS: [u32; 12] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 16];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DivisionFieldError {
    #[error("n = {0} is not supported")]
    UnsupportedN(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Abelian,
    /// Non-abelian, shown by a computation in this crate.
    NonAbelianCertified,
    /// Non-abelian by the classification of abelian levels, without an independent certificate.
    NonAbelianByClassification,
}

impl Verdict {
    pub fn is_abelian(self) -> bool {
        self == Verdict::Abelian
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldDescription {
    Multiquadratic(Arc<MqField>),
    Symbolic(String),
}

impl FieldDescription {
    pub fn multiquadratic(&self) -> Option<&Arc<MqField>> {
        match self {
            FieldDescription::Multiquadratic(k) => Some(k),
            FieldDescription::Symbolic(_) => None,
        }
    }
}

impl std::fmt::Display for FieldDescription {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescription::Multiquadratic(k) => write!(f, "{k}"),
            FieldDescription::Symbolic(s) => f.write_str(s),
        }
    }
}

impl Serialize for FieldDescription {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FieldDescription::Multiquadratic(k) => {
                let mut st = s.serialize_struct("Field", 2)?;
                st.serialize_field("basis", &k.basis_i64())?;
                st.serialize_field("name", &k.name())?;
                st.end()
            }
            FieldDescription::Symbolic(text) => {
                let mut st = s.serialize_struct("Field", 1)?;
                st.serialize_field("symbolic", text)?;
                st.end()
            }
        }
    }
}

/// One step of the argument behind a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    /// Short name of the fact used.
    pub cite: String,
    /// What was computed for this curve.
    pub quote: String,
}

pub(crate) fn ev(cite: &str, quote: impl Into<String>) -> Evidence {
    Evidence { cite: cite.into(), quote: quote.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub label: Option<String>,
    pub curve: WeierstrassCurve,
    pub n: u32,
    pub verdict: Verdict,
    pub group: GroupType,
    pub field: Option<FieldDescription>,
    /// `Q(E[n]) = Q(zeta_n)`.
    pub cyclotomic: bool,
    /// The group identification rests on sampled Frobenius data only.
    pub heuristic: bool,
    pub evidence: Vec<Evidence>,
    pub certificate: Option<Certificate>,
}

impl ClassificationReport {
    pub(crate) fn new(e: &WeierstrassCurve, n: u32, verdict: Verdict, group: GroupType) -> Self {
        ClassificationReport {
            label: None,
            curve: e.clone(),
            n,
            verdict,
            group,
            field: None,
            cyclotomic: false,
            heuristic: false,
            evidence: Vec::new(),
            certificate: None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.verdict.is_abelian()
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    /// The constructed multiquadratic field, when there is one.
    pub fn mq_field(&self) -> Option<&Arc<MqField>> {
        self.field.as_ref().and_then(FieldDescription::multiquadratic)
    }

    pub fn summary(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Abelian => "abelian",
            Verdict::NonAbelianCertified => "non-abelian (certified)",
            Verdict::NonAbelianByClassification => "non-abelian (by classification)",
        };
        let mut s = format!("n={:<2} {verdict}", self.n);
        if self.is_abelian() {
            s += &format!(", group {}", self.group);
        }
        if let Some(f) = &self.field {
            s += &format!(", Q(E[{}]) = {f}", self.n);
        }
        if self.cyclotomic {
            s += ", cyclotomic";
        }
        if self.heuristic {
            s += " [heuristic]";
        }
        s
    }
}

impl Serialize for ClassificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ClassificationReport", 10)?;
        if let Some(l) = &self.label {
            st.serialize_field("label", l)?;
        } else {
            st.skip_field("label")?;
        }
        st.serialize_field("curve", &self.curve.coeff_strings())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("cyclotomic", &self.cyclotomic)?;
        st.serialize_field("heuristic", &self.heuristic)?;
        st.serialize_field("evidence", &self.evidence)?;
        st.serialize_field("certificate", &self.certificate)?;
        st.end()
    }
}

/// Where a fixture's coefficients come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Provenance {
    PaperPrinted,
    FamilyInstantiated,
    ExternalDatabase,
}

/// A named curve with `[a1, a2, a3, a4, a6]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveFixture {
    pub label: String,
    #[serde(serialize_with = "serialize_curve")]
    pub curve: WeierstrassCurve,
    pub provenance: Provenance,
}

fn serialize_curve<S: Serializer>(e: &WeierstrassCurve, s: S) -> Result<S::Ok, S::Error> {
    e.coeff_strings().serialize(s)
}

impl CurveFixture {
    pub fn new(label: &str, a: [i64; 5], provenance: Provenance) -> Self {
        CurveFixture {
            label: label.into(),
            curve: WeierstrassCurve::from_ints(a).expect("fixture curves are nonsingular"),
            provenance,
        }
    }
}

/// The curves whose equations are printed in the introduction.
pub fn bundled_fixtures() -> Vec<CurveFixture> {
    use Provenance::PaperPrinted as P;
    vec![
        CurveFixture::new("11a1", [0, -1, 1, -10, -20], P),
        CurveFixture::new("14a1", [1, 0, 1, 4, -6], P),
        CurveFixture::new("15a1", [1, 1, 1, -10, -10], P),
        CurveFixture::new("15a2", [1, 1, 1, -135, -660], P),
        CurveFixture::new("19a1", [0, 1, 1, -9, -15], P),
    ]
}

/// `Q(zeta_n)` when it is multiquadratic.
pub fn cyclotomic_mq_field(n: u32) -> Option<Arc<MqField>> {
    let classes: &[i64] = match n {
        1 | 2 => &[],
        3 | 6 => &[-3],
        4 => &[-1],
        8 => &[-1, 2],
        12 => &[-1, 3],
        24 => &[-1, 2, 3],
        _ => return None,
    };
    Some(mq_field(&classes.iter().map(|&c| rat(c)).collect::<Vec<_>>()).unwrap())
}

pub(crate) fn euler_phi(n: u32) -> u64 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64
}

/// Cyclotomic flag: abelian, `|G| = phi(n)`, and equality of fields when the field is known.
pub(crate) fn set_cyclotomic(r: &mut ClassificationReport) {
    let order_ok = r.is_abelian() && r.group.order() == Some(euler_phi(r.n));
    let field_ok = match (r.mq_field(), cyclotomic_mq_field(r.n)) {
        (Some(k), Some(z)) => **k == *z,
        _ => true,
    };
    r.cyclotomic = order_ok && field_ok;
}

/// Constructive classification at `n` in `{2, 3, 4, 5, 6, 8}`.
pub fn classify(e: &WeierstrassCurve, n: u32) -> Result<ClassificationReport, DivisionFieldError> {
    let mut r = match n {
        2 => classify2(e),
        3 => classify3(e),
        4 => classify4(e),
        5 => classify5(e),
        6 => classify6(e),
        8 => classify8(e),
        _ => return Err(DivisionFieldError::UnsupportedN(n)),
    };
    if let Some(x) = cm_expectation(e) {
        r.evidence.push(x.check(&r));
    }
    Ok(r)
}

/// Settings for [`classify_all_with`].
#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub prime_bound: u64,
    /// Try Frobenius certificates for non-abelian verdicts at `n <= 9`.
    pub certify: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { prime_bound: DEFAULT_PRIME_BOUND, certify: true }
    }
}

pub fn classify_all(e: &WeierstrassCurve) -> BTreeMap<u32, ClassificationReport> {
    classify_all_with(e, &ClassifyOptions::default())
}

fn attach_certificate(r: &mut ClassificationReport, e: &WeierstrassCurve, samples: &[FrobeniusSample], bound: u64) {
    let fp = fingerprint_from_samples(e, r.n, bound, samples);
    let Ok(cert) = certify_fingerprint(&fp) else { return };
    if cert.is_certified() {
        r.verdict = Verdict::NonAbelianCertified;
        r.evidence.push(ev(
            "Frobenius certificate",
            format!("every abelian candidate at level {} misses a Frobenius datum from {} primes <= {}", r.n, fp.primes_used, bound),
        ));
    } else {
        r.evidence.push(ev(
            "Frobenius certificate",
            format!("inconclusive: some abelian candidate contains all data from {} primes <= {}", fp.primes_used, bound),
        ));
    }
    r.certificate = Some(cert);
}

fn corroborate_level5(r: &mut ClassificationReport, e: &WeierstrassCurve, samples: &[FrobeniusSample], bound: u64) {
    let fp = fingerprint_from_samples(e, 5, bound, samples);
    let Ok(cert) = certify_fingerprint(&fp) else { return };
    if let Certificate::Inconclusive { matching, .. } = &cert {
        let shapes: Vec<String> = matching.iter().map(|c| c.structure.clone()).collect();
        let agrees = !shapes.is_empty() && shapes.iter().all(|s| *s == r.group_as_candidate_string());
        r.evidence.push(ev(
            "Frobenius fingerprint",
            format!(
                "candidates with exactly the realized (tr, det) pairs below {bound}: [{}]; {}",
                shapes.join("; "),
                if agrees { "agrees" } else { "does not single out the computed group" }
            ),
        ));
    }
    r.certificate = Some(cert);
}

impl ClassificationReport {
    /// Group written as `AbelianCandidate::structure` does.
    fn group_as_candidate_string(&self) -> String {
        match &self.group {
            GroupType::Abelian(f) if f.is_empty() => "0".into(),
            GroupType::Abelian(f) => f.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>().join(" x "),
            g => g.to_string(),
        }
    }
}

/// A certified non-abelian `Q(E[d])` inside `Q(E[n])` settles level n.
fn propagate_divisors(out: &mut BTreeMap<u32, ClassificationReport>) {
    for n in ALL_LEVELS {
        if out[&n].verdict != Verdict::NonAbelianByClassification {
            continue;
        }
        let d = out
            .iter()
            .find(|(&d, r)| d < n && n % d == 0 && r.verdict == Verdict::NonAbelianCertified)
            .map(|(&d, _)| d);
        if let Some(d) = d {
            let r = out.get_mut(&n).unwrap();
            r.verdict = Verdict::NonAbelianCertified;
            r.evidence.push(ev("divisor level", format!("Q(E[{n}]) contains the non-abelian Q(E[{d}])")));
        }
    }
}

fn beyond_abelian_levels(e: &WeierstrassCurve, n: u32) -> ClassificationReport {
    let mut r = ClassificationReport::new(e, n, Verdict::NonAbelianByClassification, GroupType::NonAbelian);
    r.evidence.push(ev(
        "classification of abelian levels",
        format!("Q(E[n]) abelian forces n in {{2, 3, 4, 5, 6, 8}}; here n = {n}"),
    ));
    r
}

/// Classification at one level of [`ALL_LEVELS`], certified on its own.
///
/// Unlike [`classify_all_with`], a non-abelian verdict is not upgraded from a divisor level.
pub fn classify_level_with(
    e: &WeierstrassCurve,
    n: u32,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport, DivisionFieldError> {
    let mut r = match n {
        2..=6 | 8 => classify(e, n)?,
        _ if ALL_LEVELS.contains(&n) => beyond_abelian_levels(e, n),
        _ => return Err(DivisionFieldError::UnsupportedN(n)),
    };
    let wants_cert = r.verdict == Verdict::NonAbelianByClassification && n <= 9;
    if opts.certify && (wants_cert || (n == 5 && r.is_abelian())) {
        let samples = frobenius_samples(e, opts.prime_bound);
        if wants_cert {
            attach_certificate(&mut r, e, &samples, opts.prime_bound);
        } else {
            corroborate_level5(&mut r, e, &samples, opts.prime_bound);
        }
    }
    Ok(r)
}

/// Classification at every level in [`ALL_LEVELS`].
pub fn classify_all_with(e: &WeierstrassCurve, opts: &ClassifyOptions) -> BTreeMap<u32, ClassificationReport> {
    let mut out = BTreeMap::new();
    for n in [2, 3, 4, 5, 6, 8] {
        out.insert(n, classify(e, n).expect("constructive level"));
    }
    for n in [7, 9, 10, 11, 12, 16] {
        out.insert(n, beyond_abelian_levels(e, n));
    }
    propagate_divisors(&mut out);
    if opts.certify {
        let samples = frobenius_samples(e, opts.prime_bound);
        for n in 2..=9u32 {
            let Some(r) = out.get_mut(&n) else { continue };
            if r.verdict == Verdict::NonAbelianByClassification {
                attach_certificate(r, e, &samples, opts.prime_bound);
            } else if n == 5 && r.is_abelian() {
                corroborate_level5(r, e, &samples, opts.prime_bound);
            }
        }
        propagate_divisors(&mut out);
    }
    out
}

/// `Q(E[n]) = Q(zeta_n)`, for `n` in `2..=8`.
pub fn verify_cyclotomic(e: &WeierstrassCurve, n: u32) -> Result<bool, DivisionFieldError> {
    match n {
        2..=6 | 8 => Ok(classify(e, n)?.cyclotomic),
        // never abelian
        7 => Ok(false),
        _ => Err(DivisionFieldError::UnsupportedN(n)),
    }
}

/// Levels with an abelian verdict, with their groups.
pub fn abelian_levels(reports: &BTreeMap<u32, ClassificationReport>) -> Vec<(u32, GroupType)> {
    reports.values().filter(|r| r.is_abelian()).map(|r| (r.n, r.group.clone())).collect()
}

pub(crate) fn fmt_q(q: &crate::algebra_core::Rational) -> String {
    format_rational(q)
}
