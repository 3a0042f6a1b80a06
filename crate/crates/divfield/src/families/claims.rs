use super::{family, fmt_t, jline_eval, mobius, parse_poly, Claim, FamilySpec, Instance};
use crate::algebra_core::Rational;
use crate::audit::AuditReport;
use crate::division_fields::{classify, ClassificationReport, GroupType};
use crate::elliptic::{rational_isogeny_kernels, torsion_over_q, velu_isogeny, RationalTorsion, WeierstrassCurve};
use crate::frobenius::ap;
use crate::multiquad::MqField;
use num_bigint::BigInt;
use num_prime::nt_funcs::is_prime64;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Knobs for the sampled verification.
#[derive(Clone, Debug)]
pub struct ClaimContext {
    /// Primes below this bound are compared in trace-of-Frobenius checks.
    pub trace_bound: u64,
    /// Minimum number of good primes such a check must compare.
    pub min_traces: usize,
}

impl Default for ClaimContext {
    fn default() -> Self {
        ClaimContext { trace_bound: 200, min_traces: 20 }
    }
}

/// Lazily computed data about one instance.
struct Probe<'a> {
    inst: &'a Instance,
    reports: BTreeMap<u32, Result<ClassificationReport, String>>,
    torsion: Option<RationalTorsion>,
}

impl<'a> Probe<'a> {
    fn curve(&self) -> &'a WeierstrassCurve {
        &self.inst.curve
    }

    fn report(&mut self, n: u32) -> Result<&ClassificationReport, String> {
        let e = self.curve();
        self.reports
            .entry(n)
            .or_insert_with(|| classify(e, n).map_err(|err| err.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn torsion(&mut self) -> &RationalTorsion {
        let e = self.curve();
        self.torsion.get_or_insert_with(|| torsion_over_q(e))
    }
}

fn traces_agree(e: &WeierstrassCurve, f: &WeierstrassCurve, ctx: &ClaimContext) -> Result<(), String> {
    let mut compared = 0;
    for l in (3..ctx.trace_bound).filter(|&l| is_prime64(l)) {
        if let (Ok(a), Ok(b)) = (ap(e, l), ap(f, l)) {
            if a != b {
                return Err(format!("a_{l} differs: {a} vs {b}"));
            }
            compared += 1;
        }
    }
    if compared < ctx.min_traces {
        return Err(format!("only {compared} good primes compared"));
    }
    Ok(())
}

/// Codomains of cyclic rational isogenies of degree `2^a 3^b` built one prime step at a time.
fn cyclic_isogenous(e: &WeierstrassCurve, steps: &[u32]) -> Vec<WeierstrassCurve> {
    let mut layer = vec![e.clone()];
    for &p in steps {
        let mut next = Vec::new();
        for c in &layer {
            for k in rational_isogeny_kernels(c, p).unwrap_or_default() {
                if let Ok(img) = velu_isogeny(c, &k) {
                    next.push(img);
                }
            }
        }
        layer = next;
    }
    layer
}

fn prime_steps(degree: u32) -> Option<Vec<u32>> {
    let mut d = degree;
    let mut out = Vec::new();
    for p in [2, 3, 5, 7] {
        while d % p == 0 {
            d /= p;
            out.push(p);
        }
    }
    (d == 1).then_some(out)
}

fn check(claim: &Claim, probe: &mut Probe, ctx: &ClaimContext) -> Result<(), String> {
    match *claim {
        Claim::Group { n, .. } => {
            let want = claim.group().unwrap();
            let r = probe.report(n)?;
            if r.is_abelian() && r.group == want {
                Ok(())
            } else {
                Err(format!("got {} ({:?})", r.group, r.verdict))
            }
        }
        Claim::Field { n, classes } => {
            let want = MqField::from_classes(&classes.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>())
                .map_err(|e| e.to_string())?;
            let r = probe.report(n)?;
            match r.mq_field() {
                Some(f) if f.is_subfield_of(&want) && want.is_subfield_of(f) => Ok(()),
                Some(f) => Err(format!("got {}", f.name())),
                None => Err(format!("no multiquadratic field ({})", r.group)),
            }
        }
        Claim::FieldOfClasses { n, constant, in_t, with_twist, .. } => {
            let t = &probe.inst.t;
            let mut gens: Vec<Rational> = constant.iter().map(|&d| Rational::from_integer(d.into())).collect();
            for src in in_t {
                gens.push(parse_poly(src, 't').map_err(|e| e.to_string())?.eval(t));
            }
            if with_twist {
                let d = probe.inst.twist.clone().ok_or("instance is not a twist")?;
                gens.push(Rational::from_integer(d));
            }
            if gens.iter().any(|g| g.is_zero()) {
                return Err("a class vanishes at this t".into());
            }
            let want = MqField::new(&gens).map_err(|e| e.to_string())?;
            let r = probe.report(n)?;
            let f = r.mq_field().ok_or_else(|| format!("no multiquadratic field ({})", r.group))?;
            if !(f.is_subfield_of(&want) && want.is_subfield_of(f)) {
                return Err(format!("got {}, expected {}", f.name(), want.name()));
            }
            let rank = GroupType::elementary(want.depth() as u32);
            (r.group == rank).then_some(()).ok_or_else(|| format!("group {} for field {}", r.group, want.name()))
        }
        Claim::Cyclotomic(n) => match probe.report(n)?.cyclotomic {
            true => Ok(()),
            false => Err("not cyclotomic".into()),
        },
        Claim::Abelian(n) => {
            let r = probe.report(n)?;
            r.is_abelian().then_some(()).ok_or_else(|| format!("{:?}", r.verdict))
        }
        Claim::TorsionAt { n, pair } => {
            let got = probe.torsion().structure.n_torsion(n);
            (got.pair() == pair).then_some(()).ok_or_else(|| format!("E(Q)[{n}] = {got}"))
        }
        Claim::TorsionByClass { n, generic, special, constant, class } => {
            let v = parse_poly(class, 't').map_err(|e| e.to_string())?.eval(&probe.inst.t);
            let consts: Vec<Rational> = constant.iter().map(|&d| Rational::from_integer(d.into())).collect();
            let is_special = !v.is_zero() && MqField::new(&consts).map_err(|e| e.to_string())?.contains_sqrt_of(&v);
            let want = if is_special { special } else { generic };
            let got = probe.torsion().structure.n_torsion(n);
            (got.pair() == want).then_some(()).ok_or_else(|| format!("E(Q)[{n}] = {got}, special = {is_special}"))
        }
        Claim::PointOfOrder(m) => {
            let s = &probe.torsion().structure;
            let exponent = s.invariants.last().copied().unwrap_or(1);
            (exponent % m == 0).then_some(()).ok_or_else(|| format!("E(Q)_tors = {s}"))
        }
        Claim::IsogenyKernels { p, at_least } => {
            let k = rational_isogeny_kernels(probe.curve(), p).map_err(|e| e.to_string())?;
            (k.len() >= at_least).then_some(()).ok_or_else(|| format!("{} kernels", k.len()))
        }
        Claim::IsogenousToJLine { degree, jline, ref at } => {
            let steps = prime_steps(degree).ok_or("degree outside 2, 3, 5, 7")?;
            let s = mobius(at, &probe.inst.t).ok_or("parameter at the pole of the substitution")?;
            let j = jline_eval(jline, &s).map_err(|e| e.to_string())?;
            let e = probe.curve();
            let hit = cyclic_isogenous(e, &steps).into_iter().find(|c| c.j == j);
            match hit {
                Some(c) => traces_agree(e, &c, ctx),
                None => Err(format!("no {degree}-isogenous curve with j = {}", fmt_t(&j))),
            }
        }
    }
}

/// Checks every claim of the family at one member; one entry per claim.
pub fn check_instance(f: &FamilySpec, inst: &Instance, ctx: &ClaimContext) -> Vec<(Claim, Result<(), String>)> {
    let mut probe = Probe { inst, reports: BTreeMap::new(), torsion: None };
    f.claims.iter().map(|c| (*c, check(c, &mut probe, ctx))).collect()
}

pub fn verify_family_claims(id: &str, t_samples: &[Rational]) -> AuditReport {
    verify_family_claims_with(id, t_samples, &ClaimContext::default())
}

/// Runs every claim at every sample. Each (sample, claim) pair is one case;
/// an inadmissible sample counts as a failed case.
pub fn verify_family_claims_with(id: &str, t_samples: &[Rational], ctx: &ClaimContext) -> AuditReport {
    let mut report = AuditReport::new("family_claims", id);
    let f = match family(id) {
        Ok(f) => f,
        Err(e) => {
            report.record(Some(e.to_string()));
            return report;
        }
    };
    for t in t_samples {
        let inst = match f.instantiate(t) {
            Ok(i) => i,
            Err(e) => {
                report.record(Some(format!("t = {}: {e}", fmt_t(t))));
                continue;
            }
        };
        for (claim, outcome) in check_instance(f, &inst, ctx) {
            report.record(outcome.err().map(|why| {
                let twist = inst.twist.as_ref().map(|d| format!(", d = {d}")).unwrap_or_default();
                format!("t = {}{twist}: {claim}: {why}", fmt_t(t))
            }));
        }
    }
    report
}
