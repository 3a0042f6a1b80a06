use serde::Serialize;
use std::fmt;

/// 2x2 matrix over Z/nZ, entries reduced to `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mat2 {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

fn red(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

pub(crate) fn inv_mod(x: u32, n: u32) -> Option<u32> {
    let (mut r0, mut r1) = (n as i64, (x % n) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| red(t0, n))
}

pub(crate) fn is_unit(x: u32, n: u32) -> bool {
    n == 1 || inv_mod(x, n).is_some()
}

impl Mat2 {
    pub fn new(n: u32, a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { n, a: red(a, n), b: red(b, n), c: red(c, n), d: red(d, n) }
    }

    pub fn identity(n: u32) -> Self {
        Mat2::new(n, 1, 0, 0, 1)
    }

    pub fn scalar(n: u32, s: i64) -> Self {
        Mat2::new(n, s, 0, 0, s)
    }

    pub fn diag(n: u32, a: i64, d: i64) -> Self {
        Mat2::new(n, a, 0, 0, d)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let n = self.n as u64;
        let (a, b, c, d) = (self.a as u64, self.b as u64, self.c as u64, self.d as u64);
        Mat2 {
            n: self.n,
            a: ((a * o.a as u64 + b * o.c as u64) % n) as u32,
            b: ((a * o.b as u64 + b * o.d as u64) % n) as u32,
            c: ((c * o.a as u64 + d * o.c as u64) % n) as u32,
            d: ((c * o.b as u64 + d * o.d as u64) % n) as u32,
        }
    }

    pub fn det(&self) -> u32 {
        red(self.a as i64 * self.d as i64 - self.b as i64 * self.c as i64, self.n)
    }

    pub fn tr(&self) -> u32 {
        (self.a + self.d) % self.n
    }

    pub fn is_invertible(&self) -> bool {
        is_unit(self.det(), self.n)
    }

    pub fn inv(&self) -> Option<Mat2> {
        let di = inv_mod(self.det(), self.n)? as i64;
        let (a, b, c, d) = (self.a as i64, self.b as i64, self.c as i64, self.d as i64);
        Some(Mat2::new(self.n, d * di, -b * di, -c * di, a * di))
    }

    pub fn pow(&self, mut e: u64) -> Mat2 {
        let mut base = *self;
        let mut acc = Mat2::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `h^-1 g h`.
    pub fn conj(&self, h: &Mat2) -> Mat2 {
        h.inv().expect("invertible conjugator").mul(self).mul(h)
    }

    pub fn commutes(&self, o: &Mat2) -> bool {
        self.mul(o) == o.mul(self)
    }

    pub fn is_upper(&self) -> bool {
        self.c == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.b == 0 && self.c == 0
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && self.a == self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.n)
    }

    /// Reduction to a divisor `m` of the modulus.
    pub fn reduce(&self, m: u32) -> Mat2 {
        debug_assert_eq!(self.n % m, 0);
        Mat2 { n: m, a: self.a % m, b: self.b % m, c: self.c % m, d: self.d % m }
    }

    /// Multiplicative order (the matrix must be invertible).
    pub fn order(&self) -> u32 {
        let id = Mat2::identity(self.n);
        let mut g = *self;
        let mut k = 1;
        while g != id {
            g = g.mul(self);
            k += 1;
        }
        k
    }

    pub fn encode(&self) -> u32 {
        let n = self.n;
        ((self.a * n + self.b) * n + self.c) * n + self.d
    }

    pub fn decode(n: u32, code: u32) -> Mat2 {
        Mat2 { n, a: code / (n * n * n), b: code / (n * n) % n, c: code / n % n, d: code % n }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]] mod {}", self.a, self.b, self.c, self.d, self.n)
    }
}

/// All of GL(2, Z/nZ), in encoding order (identity is not first).
pub fn gl2_elements(n: u32) -> Vec<Mat2> {
    (0..n.pow(4)).map(|c| Mat2::decode(n, c)).filter(|m| m.is_invertible()).collect()
}
