use super::{Rational, UniPoly};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial in two variables over Q. Keys are `(deg_x, deg_y)`; the
/// second variable doubles as the family parameter `s` or the curve `y`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(super::rat(c))
    }

    pub fn term(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn x() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    /// Embeds a univariate polynomial in the first variable.
    pub fn from_x(f: &UniPoly) -> Self {
        let mut out = BiPoly::zero();
        for (i, c) in f.coeffs().iter().enumerate() {
            out.add_term(c.clone(), i as u32, 0);
        }
        out
    }

    /// Embeds a univariate polynomial in the second variable.
    pub fn from_y(f: &UniPoly) -> Self {
        let mut out = BiPoly::zero();
        for (i, c) in f.coeffs().iter().enumerate() {
            out.add_term(c.clone(), 0, i as u32);
        }
        out
    }

    /// Builds `sum_i c_i(y) x^i` from coefficient polynomials in y.
    pub fn from_x_coeffs(cs: &[UniPoly]) -> Self {
        let mut out = BiPoly::zero();
        for (i, c) in cs.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                out.add_term(a.clone(), i as u32, j as u32);
            }
        }
        out
    }

    fn add_term(&mut self, c: Rational, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Coefficient of x^i as a polynomial in y.
    pub fn x_coeff(&self, i: u32) -> UniPoly {
        let n = self.deg_y() as usize + 1;
        let mut v = vec![Rational::zero(); n];
        for (&(a, b), c) in &self.terms {
            if a == i {
                v[b as usize] = c.clone();
            }
        }
        UniPoly::new(v)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            out.add_term(a * c, i, j);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Specializes the second variable.
    pub fn eval_y(&self, y: &Rational) -> UniPoly {
        let mut v = vec![Rational::zero(); self.deg_x() as usize + 1];
        for (&(i, j), c) in &self.terms {
            v[i as usize] += c * y.pow(j as i32);
        }
        UniPoly::new(v)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * x.pow(i as i32) * y.pow(j as i32))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Substitutes `x -> fx`, `y -> fy`.
    pub fn compose(&self, fx: &BiPoly, fy: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        let mut xp: Vec<BiPoly> = vec![BiPoly::one()];
        let mut yp: Vec<BiPoly> = vec![BiPoly::one()];
        for _ in 0..self.deg_x() {
            let n = &xp[xp.len() - 1] * fx;
            xp.push(n);
        }
        for _ in 0..self.deg_y() {
            let n = &yp[yp.len() - 1] * fy;
            yp.push(n);
        }
        for (&(i, j), c) in &self.terms {
            out = &out + &(&xp[i as usize] * &yp[j as usize]).scale(c);
        }
        out
    }

    /// Reduces modulo `y^2 - g(x)`, leaving y-degree at most 1.
    pub fn reduce_mod_curve(&self, g: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        let mut gp: Vec<BiPoly> = vec![BiPoly::one()];
        for (&(i, j), c) in &self.terms {
            let k = (j / 2) as usize;
            while gp.len() <= k {
                let n = &gp[gp.len() - 1] * g;
                gp.push(n);
            }
            let t = BiPoly::term(c.clone(), i, j % 2);
            out = &out + &(&t * &gp[k]);
        }
        out
    }

    /// Division by a divisor whose leading x-coefficient is a nonzero rational.
    /// Returns `(q, r)` with `self = q*d + r` and `deg_x r < deg_x d`.
    pub fn div_rem_x(&self, d: &BiPoly) -> (BiPoly, BiPoly) {
        let n = d.deg_x();
        let lead = d.x_coeff(n);
        assert!(lead.deg() == 0 && !lead.is_zero(), "leading x-coefficient must be constant");
        let inv = lead.lc().recip();
        let mut r = self.clone();
        let mut q = BiPoly::zero();
        loop {
            if r.is_zero() || r.deg_x() < n {
                break;
            }
            let m = r.deg_x();
            let top = BiPoly::from_y(&r.x_coeff(m)).scale(&inv);
            let shift = &top * &BiPoly::term(Rational::one(), m - n, 0);
            r = &r - &(&shift * d);
            q = &q + &shift;
        }
        (q, r)
    }

    pub fn exact_div_x(&self, d: &BiPoly) -> Option<BiPoly> {
        let (q, r) = self.div_rem_x(d);
        r.is_zero().then_some(q)
    }

    pub fn to_string_vars(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| {
                let mut s = super::format_rational(c);
                if i > 0 {
                    s.push_str(&format!("*{vx}^{i}"));
                }
                if j > 0 {
                    s.push_str(&format!("*{vy}^{j}"));
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_vars("x", "s"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(c.clone(), i, j);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(-c.clone(), i, j);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                out.add_term(a * b, i + k, j + l);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, o: BiPoly) -> BiPoly {
        &self + &o
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, o: BiPoly) -> BiPoly {
        &self - &o
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, o: BiPoly) -> BiPoly {
        &self * &o
    }
}

/// Exact comparison of two polynomials in x with coefficients in Q[s].
pub fn poly_identity_check(lhs: &BiPoly, rhs: &BiPoly) -> bool {
    lhs == rhs
}
