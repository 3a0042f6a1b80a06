//! Curve fixture files: one `label,a1,a2,a3,a4,a6` record per line, `#` comments.

use crate::algebra_core::parse_rational;
use crate::division_fields::{bundled_fixtures, CurveFixture, Provenance};
use crate::elliptic::{EllipticError, WeierstrassCurve};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("line {line}: expected label and five coefficients, got {fields} fields")]
    FieldCount { line: usize, fields: usize },
    #[error("line {line}: bad coefficient {text:?}")]
    BadCoefficient { line: usize, text: String },
    #[error("line {line}: empty label")]
    EmptyLabel { line: usize },
    #[error("line {line}: {label} is singular")]
    Singular { line: usize, label: String },
    #[error("line {line}: duplicate label {label}")]
    DuplicateLabel { line: usize, label: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

/// Parses `a1,a2,a3,a4,a6`.
pub fn parse_coefficients(src: &str) -> Result<WeierstrassCurve, CurveArgError> {
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(CurveArgError::Count(parts.len()));
    }
    let mut a = Vec::with_capacity(5);
    for p in parts {
        a.push(parse_rational(p).ok_or_else(|| CurveArgError::Coefficient(p.to_string()))?);
    }
    WeierstrassCurve::new(a.try_into().unwrap()).map_err(CurveArgError::Curve)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveArgError {
    #[error("expected five coefficients a1,a2,a3,a4,a6, got {0}")]
    Count(usize),
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("SingularCurve: {0}")]
    Curve(EllipticError),
}

/// Ordered records with unique labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureFile {
    pub records: Vec<CurveFixture>,
}

impl FixtureFile {
    /// Parses a fixture file; every record gets `provenance`.
    pub fn parse(src: &str, provenance: Provenance) -> Result<Self, FixtureError> {
        let mut records = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split(',').map(str::trim).collect();
            if fields.len() != 6 {
                return Err(FixtureError::FieldCount { line, fields: fields.len() });
            }
            let label = fields[0];
            if label.is_empty() {
                return Err(FixtureError::EmptyLabel { line });
            }
            let curve = parse_coefficients(&fields[1..].join(",")).map_err(|e| match e {
                CurveArgError::Coefficient(text) => FixtureError::BadCoefficient { line, text },
                _ => FixtureError::Singular { line, label: label.to_string() },
            })?;
            if !seen.insert(label.to_string()) {
                return Err(FixtureError::DuplicateLabel { line, label: label.to_string() });
            }
            records.push(CurveFixture { label: label.to_string(), curve, provenance });
        }
        Ok(FixtureFile { records })
    }

    pub fn load(path: &Path) -> Result<Self, FixtureError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| FixtureError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::parse(&src, Provenance::ExternalDatabase)
    }

    pub fn bundled() -> Self {
        FixtureFile { records: bundled_fixtures() }
    }

    pub fn get(&self, label: &str) -> Option<&CurveFixture> {
        self.records.iter().find(|r| r.label == label)
    }

    /// Adds the records of `other`; a label already present must name the same curve.
    pub fn merge(&mut self, other: FixtureFile) -> Result<(), FixtureError> {
        for (i, r) in other.records.into_iter().enumerate() {
            match self.get(&r.label) {
                Some(old) if old.curve != r.curve => {
                    return Err(FixtureError::DuplicateLabel { line: i + 1, label: r.label });
                }
                Some(_) => {}
                None => self.records.push(r),
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# label,a1,a2,a3,a4,a6\n");
        for r in &self.records {
            writeln!(out, "{},{}", r.label, r.curve.coeff_strings().join(",")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_round_trip() {
        let f = FixtureFile::bundled();
        let back = FixtureFile::parse(&f.to_text(), Provenance::PaperPrinted).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn comments_rationals_and_errors() {
        let f = FixtureFile::parse("# db\n\n33a1, 1,1,0,-11,0  # trailing\nq,0,0,0,-1/4,0\n", Provenance::ExternalDatabase)
            .unwrap();
        assert_eq!(f.records.len(), 2);
        assert_eq!(f.get("q").unwrap().curve.coeff_strings()[3], "-1/4");
        let err = |s: &str| FixtureFile::parse(s, Provenance::ExternalDatabase).unwrap_err();
        assert!(matches!(err("a,1,2,3"), FixtureError::FieldCount { line: 1, fields: 4 }));
        assert!(matches!(err("a,0,0,0,0,0"), FixtureError::Singular { .. }));
        assert!(matches!(err("a,0,0,x,1,0"), FixtureError::BadCoefficient { .. }));
        assert!(matches!(err("a,0,0,0,1,0\na,0,0,0,2,0"), FixtureError::DuplicateLabel { line: 2, .. }));
        assert!(matches!(err(",0,0,0,1,0"), FixtureError::EmptyLabel { line: 1 }));
    }

    #[test]
    fn merge_rejects_conflicts() {
        let mut f = FixtureFile::bundled();
        let same = FixtureFile::parse("11a1,0,-1,1,-10,-20", Provenance::ExternalDatabase).unwrap();
        f.merge(same).unwrap();
        assert_eq!(f.records.len(), 5);
        let other = FixtureFile::parse("11a1,0,0,0,1,0", Provenance::ExternalDatabase).unwrap();
        assert!(f.merge(other).is_err());
    }

    #[test]
    fn coefficient_argument() {
        assert_eq!(parse_coefficients("0,-1,1,-10,-20").unwrap().coeff_strings()[4], "-20");
        assert_eq!(parse_coefficients("0,0,1,-1,-10,-20"), Err(CurveArgError::Count(6)));
        assert!(matches!(parse_coefficients("0,0,0,0,0"), Err(CurveArgError::Curve(EllipticError::SingularCurve))));
    }
}
