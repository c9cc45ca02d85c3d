use rand::Rng;

use super::{FiniteField, Fq};
use crate::word::{Sign, Word};

/// `[a b; c d]` over a [`FiniteField`]. Values built by this module have
/// determinant one; `Mat2::new` does not check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Fq,
    pub b: Fq,
    pub c: Fq,
    pub d: Fq,
}

impl Mat2 {
    pub fn new(a: Fq, b: Fq, c: Fq, d: Fq) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(Fq::ONE, Fq::ZERO, Fq::ZERO, Fq::ONE)
    }

    pub fn entries(&self) -> [Fq; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl FiniteField {
    pub fn mat_from_ints(&self, a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(self.from_int(a), self.from_int(b), self.from_int(c), self.from_int(d))
    }

    pub fn mat_mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        if self.degree() == 1 {
            // One reduction per entry; p < 2^16 keeps the sums in range.
            let p = self.characteristic();
            let dot = |a: Fq, b: Fq, c: Fq, d: Fq| {
                Fq(((a.0 as u64 * b.0 as u64 + c.0 as u64 * d.0 as u64) % p) as u32)
            };
            return Mat2 {
                a: dot(x.a, y.a, x.b, y.c),
                b: dot(x.a, y.b, x.b, y.d),
                c: dot(x.c, y.a, x.d, y.c),
                d: dot(x.c, y.b, x.d, y.d),
            };
        }
        Mat2 {
            a: self.add(self.mul(x.a, y.a), self.mul(x.b, y.c)),
            b: self.add(self.mul(x.a, y.b), self.mul(x.b, y.d)),
            c: self.add(self.mul(x.c, y.a), self.mul(x.d, y.c)),
            d: self.add(self.mul(x.c, y.b), self.mul(x.d, y.d)),
        }
    }

    /// Inverse of a determinant-one matrix: `[d -b; -c a]`.
    pub fn mat_inv(&self, x: &Mat2) -> Mat2 {
        Mat2::new(x.d, self.neg(x.b), self.neg(x.c), x.a)
    }

    pub fn mat_neg(&self, x: &Mat2) -> Mat2 {
        Mat2::new(self.neg(x.a), self.neg(x.b), self.neg(x.c), self.neg(x.d))
    }

    pub fn det(&self, x: &Mat2) -> Fq {
        self.sub(self.mul(x.a, x.d), self.mul(x.b, x.c))
    }

    pub fn trace(&self, x: &Mat2) -> Fq {
        self.add(x.a, x.d)
    }

    /// Every element of `SL2(F_q)`, in a fixed order: `a` outermost; for
    /// `a ≠ 0` the pair `(b, c)` determines `d = (1 + bc)/a`, for `a = 0` the
    /// entry `b ≠ 0` forces `c = -1/b` and `d` is free.
    pub fn sl2_elements(&self) -> Vec<Mat2> {
        let mut out = Vec::with_capacity(self.sl2_order() as usize);
        for a in self.elements() {
            if a == Fq::ZERO {
                for b in self.elements().filter(|&b| b != Fq::ZERO) {
                    let c = self.neg(self.inv(b).expect("nonzero"));
                    for d in self.elements() {
                        out.push(Mat2::new(a, b, c, d));
                    }
                }
            } else {
                let a_inv = self.inv(a).expect("nonzero");
                for b in self.elements() {
                    for c in self.elements() {
                        let d = self.mul(self.add(Fq::ONE, self.mul(b, c)), a_inv);
                        out.push(Mat2::new(a, b, c, d));
                    }
                }
            }
        }
        out
    }

    /// `|SL2(F_q)| = q(q^2 - 1)`.
    pub fn sl2_order(&self) -> u64 {
        let q = self.order() as u64;
        q * (q * q - 1)
    }

    /// `|PSL2(F_q)| = q(q^2 - 1)/2` for odd `q`.
    pub fn psl2_order(&self) -> u64 {
        self.sl2_order() / 2
    }

    /// Uniform random element of `SL2(F_q)`.
    pub fn random_sl2<R: Rng + ?Sized>(&self, rng: &mut R) -> Mat2 {
        let q = self.order() as u32;
        let pick = |rng: &mut R| Fq(rng.gen_range(0..q));
        // a = 0 accounts for q(q-1) of the q(q-1)(q+1) elements.
        if rng.gen_range(0..=q) == 0 {
            let b = Fq(rng.gen_range(1..q));
            let c = self.neg(self.inv(b).expect("nonzero"));
            Mat2::new(Fq::ZERO, b, c, pick(rng))
        } else {
            let a = Fq(rng.gen_range(1..q));
            let (b, c) = (pick(rng), pick(rng));
            let d = self.mul(self.add(Fq::ONE, self.mul(b, c)), self.inv(a).expect("nonzero"));
            Mat2::new(a, b, c, d)
        }
    }

    /// Canonical lift of `±x`: the first nonzero entry in row-major order
    /// has its first nonzero coefficient in `[1, (p-1)/2]`.
    pub fn psl2_normalize(&self, x: &Mat2) -> Mat2 {
        let lead = x
            .entries()
            .into_iter()
            .find(|&e| e != Fq::ZERO)
            .expect("determinant-one matrix is nonzero");
        let first = self
            .coeffs(lead)
            .into_iter()
            .find(|&c| c != 0)
            .expect("nonzero element");
        if first <= (self.characteristic() - 1) / 2 {
            *x
        } else {
            self.mat_neg(x)
        }
    }

    /// Packs the normalized lift into an integer in `[0, q^4)`.
    pub fn psl2_key(&self, x: &Mat2) -> u64 {
        let n = self.psl2_normalize(x);
        let q = self.order() as u64;
        n.entries()
            .iter()
            .fold(0u64, |acc, e| acc * q + e.0 as u64)
    }
}

/// `w(x, y)`, multiplying letter images left to right.
pub fn eval_word(field: &FiniteField, w: &Word, x: &Mat2, y: &Mat2) -> Mat2 {
    let x_inv = field.mat_inv(x);
    let y_inv = field.mat_inv(y);
    w.letters().iter().fold(Mat2::identity(), |acc, l| {
        let g = match (l.generator(), l.sign()) {
            (1, Sign::Plus) => x,
            (1, Sign::Minus) => &x_inv,
            (_, Sign::Plus) => y,
            (_, Sign::Minus) => &y_inv,
        };
        field.mat_mul(&acc, g)
    })
}
