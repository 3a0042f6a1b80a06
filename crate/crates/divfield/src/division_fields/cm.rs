use super::{ev, ClassificationReport, Evidence, GroupType};
use crate::algebra_core::{is_perfect_power, is_rational_square, rat, squarefree_part, Rational};
use crate::elliptic::{cm_recognize, CmRow, WeierstrassCurve};
use num_traits::Signed;

/// Abelian levels of a CM curve read off from the shape of its short model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmExpectation {
    pub row: CmRow,
    /// E.g. `"y^2 = x^3 + 16t^3"`.
    pub shape: String,
    /// Every `n >= 2` with `Q(E[n])` abelian, with its group.
    pub abelian_levels: Vec<(u32, GroupType)>,
}

impl CmExpectation {
    pub fn largest_abelian(&self) -> Option<&(u32, GroupType)> {
        self.abelian_levels.iter().max_by_key(|(n, _)| *n)
    }

    /// Levels with `Q(E[n]) = Q(zeta_n)`.
    pub fn cyclotomic_levels(&self) -> Vec<u32> {
        self.abelian_levels
            .iter()
            .filter(|(n, g)| g.order() == Some(super::euler_phi(*n)))
            .map(|(n, _)| *n)
            .collect()
    }

    pub fn expected_at(&self, n: u32) -> Option<&GroupType> {
        self.abelian_levels.iter().find(|(m, _)| *m == n).map(|(_, g)| g)
    }

    /// Compares a report with the expectation.
    pub fn check(&self, r: &ClassificationReport) -> Evidence {
        let expected = self.expected_at(r.n);
        let agrees = match expected {
            Some(g) => r.is_abelian() && r.group == *g,
            None => !r.is_abelian(),
        };
        let want = expected.map_or("non-abelian".to_string(), |g| format!("abelian {g}"));
        ev(
            "CM decision tree",
            format!("{} ({}): expected {want} at n = {}; {}", self.shape, self.row.tag(), r.n, if agrees { "agrees" } else { "DISAGREES" }),
        )
    }
}

fn square(q: &Rational) -> bool {
    is_rational_square(q)
}

fn fourth_power(q: &Rational) -> bool {
    is_perfect_power(q, 4).is_some()
}

/// Decision tree for curves with rational CM; `None` for other curves.
pub fn cm_expectation(e: &WeierstrassCurve) -> Option<CmExpectation> {
    let row = cm_recognize(&e.j)?;
    let short = e.short_model();
    let (a, b) = (short.a4().clone(), short.a6().clone());
    let z2 = GroupType::elementary(1);
    let (shape, levels) = match row.j {
        0 => {
            let s = b;
            if is_perfect_power(&s, 3).is_some() {
                ("y^2 = x^3 + t^3".to_string(), vec![(2, z2)])
            } else if let Some(t) = is_perfect_power(&(&s / rat(16)), 3) {
                // Q(E[3]) = Q(sqrt(-3), sqrt(t))
                let c = squarefree_part(&t).unwrap().squarefree;
                let k = if c == 1.into() || c == (-3).into() { 1 } else { 2 };
                ("y^2 = x^3 + 16t^3".to_string(), vec![(3, GroupType::elementary(k))])
            } else {
                ("y^2 = x^3 + s, s not t^3 or 16t^3".to_string(), vec![])
            }
        }
        1728 => {
            let s = a;
            let two = if square(&-&s) { GroupType::trivial() } else { z2 };
            if square(&s) || square(&-&s) {
                let abs = s.abs();
                let k = if fourth_power(&abs) || fourth_power(&(&abs / rat(4))) { 2 } else { 3 };
                let shape = if square(&s) { "y^2 = x^3 + t^2 x" } else { "y^2 = x^3 - t^2 x" };
                (shape.to_string(), vec![(2, two), (4, GroupType::elementary(k))])
            } else {
                ("y^2 = x^3 + s x, s not +-t^2".to_string(), vec![(2, two)])
            }
        }
        // a rational 2-isogeny and quadratic Q(E[2])
        54000 | 287496 | -3375 | 16581375 | 8000 => (format!("j = {}", row.j), vec![(2, z2)]),
        _ => (format!("j = {}", row.j), vec![]),
    };
    Some(CmExpectation { row, shape, abelian_levels: levels })
}
