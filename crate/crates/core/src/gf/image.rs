use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::eval_word;
use super::{FieldSpec, FiniteField, Fq};
use crate::error::{Error, Result};
use crate::poly::TracePolynomial;
use crate::tracepoly::tau;
use crate::word::Word;

/// Evaluation budgets for the two image methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub pairs: u128,
    pub scan_points: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            pairs: 100_000_000,
            scan_points: 100_000_000,
        }
    }
}

impl Budget {
    pub fn uniform(limit: u128) -> Self {
        Budget {
            pairs: limit,
            scan_points: limit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Every pair `(x, y)` in `SL2(F_q)^2`.
    Pairs,
    /// `τ(w)` at every point of `F_q^3`.
    TraceScan,
}

/// Result of one image computation.
///
/// For [`Method::TraceScan`] the trace set is the value set of `τ(w)` over all
/// of `F_q^3`, a superset of the traces actually attained, so `surjective`
/// is left unset; `misses_involutions` is still a sound certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageReport {
    #[serde(flatten)]
    pub field: FieldSpec,
    pub word: String,
    pub method: Method,
    pub image_trace_count: usize,
    /// Coefficient arrays, low degree first.
    pub image_traces: Vec<Vec<u64>>,
    pub misses_involutions: bool,
    pub surjective: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_size: Option<u64>,
    pub pairs_evaluated: u64,
    #[serde(default)]
    pub points_evaluated: u64,
    pub elapsed_ms: u64,
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn union(mut self, other: Bits) -> Bits {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a |= b;
        }
        self
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn ones(&self, len: usize) -> impl Iterator<Item = usize> + '_ {
        (0..len).filter(|&i| self.get(i))
    }
}

fn trace_list(field: &FiniteField, traces: &Bits) -> Vec<Vec<u64>> {
    traces
        .ones(field.order())
        .map(|i| field.coeffs(Fq(i as u32)))
        .collect()
}

/// Enumerates `w(x, y)` over all of `SL2(F_q)^2` and records the image in
/// `PSL2(F_q)`. Every pair in `PSL2` lifts to `SL2`, so the lifted images
/// taken up to sign are exactly the `PSL2` image.
pub fn enumerate_image_pairs(w: &Word, field: &FiniteField, budget: Budget) -> Result<ImageReport> {
    let started = Instant::now();
    let sl2_order = field.sl2_order() as u128;
    let needed = sl2_order * sl2_order;
    if needed > budget.pairs {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget.pairs,
            hint: "; use the trace scan method instead",
        });
    }
    let elements = field.sl2_elements();
    let q = field.order();
    let key_space = q
        .checked_pow(4)
        .filter(|&k| k <= 1 << 32)
        .ok_or_else(|| Error::InvalidArgument(format!("q = {q} is too large for pair enumeration")))?;
    let (image, traces) = elements
        .par_iter()
        .fold(
            || (Bits::new(key_space), Bits::new(q)),
            |(mut image, mut traces), x| {
                for y in &elements {
                    let m = eval_word(field, w, x, y);
                    image.set(field.psl2_key(&m) as usize);
                    traces.set(field.trace(&m).index());
                }
                (image, traces)
            },
        )
        .reduce(
            || (Bits::new(key_space), Bits::new(q)),
            |(a1, t1), (a2, t2)| (a1.union(a2), t1.union(t2)),
        );
    let image_size = image.count() as u64;
    Ok(ImageReport {
        field: field.spec(),
        word: w.to_string(),
        method: Method::Pairs,
        image_trace_count: traces.count(),
        image_traces: trace_list(field, &traces),
        misses_involutions: !traces.get(0),
        surjective: Some(image_size == field.psl2_order()),
        image_size: Some(image_size),
        pairs_evaluated: needed as u64,
        points_evaluated: 0,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// `τ(w)` with coefficients reduced into `F_p ⊂ F_q`, laid out densely for
/// evaluation one variable at a time.
pub struct TraceEvaluator<'f> {
    field: &'f FiniteField,
    deg: [usize; 3],
    /// Index `(a * (dt + 1) + b) * (du + 1) + c` holds the coefficient of `s^a t^b u^c`.
    dense: Vec<Fq>,
}

impl<'f> TraceEvaluator<'f> {
    pub fn new(field: &'f FiniteField, tp: &TracePolynomial) -> Self {
        let mut deg = [0usize; 3];
        for (m, _) in tp.iter() {
            for v in 0..3 {
                deg[v] = deg[v].max(m[v] as usize);
            }
        }
        let mut dense = vec![Fq::ZERO; (deg[0] + 1) * (deg[1] + 1) * (deg[2] + 1)];
        for (m, c) in tp.iter() {
            let idx = (m[0] as usize * (deg[1] + 1) + m[1] as usize) * (deg[2] + 1) + m[2] as usize;
            dense[idx] = field.add(dense[idx], field.from_bigint(c));
        }
        TraceEvaluator { field, deg, dense }
    }

    fn horner(&self, coeffs: &[Fq], x: Fq) -> Fq {
        coeffs
            .iter()
            .rev()
            .fold(Fq::ZERO, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// Coefficients in `(t, u)` after substituting `s`.
    fn at_s(&self, s: Fq) -> Vec<Fq> {
        let block = (self.deg[1] + 1) * (self.deg[2] + 1);
        (0..block)
            .map(|j| {
                let column: Vec<Fq> = (0..=self.deg[0]).map(|a| self.dense[a * block + j]).collect();
                self.horner(&column, s)
            })
            .collect()
    }

    /// Coefficients in `u` after substituting `t` into an [`Self::at_s`] block.
    fn at_t(&self, st: &[Fq], t: Fq) -> Vec<Fq> {
        let du = self.deg[2] + 1;
        (0..du)
            .map(|c| {
                let column: Vec<Fq> = (0..=self.deg[1]).map(|b| st[b * du + c]).collect();
                self.horner(&column, t)
            })
            .collect()
    }

    pub fn eval(&self, s: Fq, t: Fq, u: Fq) -> Fq {
        let st = self.at_s(s);
        let stu = self.at_t(&st, t);
        self.horner(&stu, u)
    }

    fn scan_slice(&self, s: Fq) -> Bits {
        let q = self.field.order();
        let mut seen = Bits::new(q);
        let st = self.at_s(s);
        for t in self.field.elements() {
            let coeffs_u = self.at_t(&st, t);
            for u in self.field.elements() {
                seen.set(self.horner(&coeffs_u, u).index());
            }
        }
        seen
    }
}

/// `tp(s, t, u)` over `F_q`.
pub fn eval_trace_poly(field: &FiniteField, tp: &TracePolynomial, s: Fq, t: Fq, u: Fq) -> Fq {
    TraceEvaluator::new(field, tp).eval(s, t, u)
}

/// Evaluates `τ(w)` at every `(s, t, u) ∈ F_q^3`. If `0` is never attained,
/// no element of trace zero, hence no involution of `PSL2(F_q)`, is in the
/// image of the word map.
pub fn trace_scan(w: &Word, field: &FiniteField, budget: Budget) -> Result<ImageReport> {
    let started = Instant::now();
    let q = field.order();
    let needed = (q as u128).pow(3);
    if needed > budget.scan_points {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget.scan_points,
            hint: "",
        });
    }
    let tp = tau(w);
    let evaluator = TraceEvaluator::new(field, &tp);
    let s_values: Vec<Fq> = field.elements().collect();
    let traces = s_values
        .par_iter()
        .map(|&s| evaluator.scan_slice(s))
        .reduce(|| Bits::new(q), Bits::union);
    Ok(ImageReport {
        field: field.spec(),
        word: w.to_string(),
        method: Method::TraceScan,
        image_trace_count: traces.count(),
        image_traces: trace_list(field, &traces),
        misses_involutions: !traces.get(0),
        surjective: None,
        image_size: None,
        pairs_evaluated: 0,
        points_evaluated: needed as u64,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Shape, Sign, WordFamily};

    fn x2yk(k: i64) -> Word {
        WordFamily::new(Sign::Plus, k).unwrap().build(Shape::X2Yk)
    }

    #[test]
    fn projection_is_surjective() {
        let f = FiniteField::new(5, 1).unwrap();
        let r = enumerate_image_pairs(&Word::x1(), &f, Budget::default()).unwrap();
        assert_eq!(r.surjective, Some(true));
        assert_eq!(r.image_size, Some(60));
        assert_eq!(r.pairs_evaluated, 120 * 120);
        assert!(!r.misses_involutions);
    }

    #[test]
    fn family_word_misses_involutions_over_f3() {
        let f = FiniteField::new(3, 1).unwrap();
        let r = enumerate_image_pairs(&x2yk(2), &f, Budget::default()).unwrap();
        assert_eq!(r.pairs_evaluated, 576);
        assert!(r.misses_involutions);
        assert_eq!(r.surjective, Some(false));
    }

    #[test]
    fn scan_examples() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let r = trace_scan(&Word::x1(), &f7, Budget::default()).unwrap();
        assert_eq!(r.image_trace_count, 7);
        assert_eq!(r.surjective, None);

        let f13 = FiniteField::new(13, 1).unwrap();
        assert!(trace_scan(&x2yk(2), &f13, Budget::default()).unwrap().misses_involutions);
        let f11 = FiniteField::new(11, 1).unwrap();
        assert!(!trace_scan(&x2yk(2), &f11, Budget::default()).unwrap().misses_involutions);
    }

    #[test]
    fn budgets_are_enforced() {
        let f = FiniteField::new(13, 1).unwrap();
        let err = enumerate_image_pairs(&Word::x1(), &f, Budget::uniform(1000)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(trace_scan(&Word::x1(), &f, Budget::uniform(2196)).is_err());
        assert!(trace_scan(&Word::x1(), &f, Budget::uniform(2197)).is_ok());
    }

    #[test]
    fn point_evaluation_examples() {
        let f = FiniteField::new(7, 1).unwrap();
        let tp: TracePolynomial = "s^2 - 2".parse().unwrap();
        assert_eq!(eval_trace_poly(&f, &tp, f.from_int(3), Fq::ZERO, Fq::ZERO), Fq::ZERO);
        let two = TracePolynomial::constant(2);
        assert_eq!(eval_trace_poly(&f, &two, f.from_int(5), f.from_int(1), f.from_int(4)), f.from_int(2));
        let zero = TracePolynomial::zero();
        assert_eq!(eval_trace_poly(&f, &zero, Fq::ONE, Fq::ONE, Fq::ONE), Fq::ZERO);
    }

    #[test]
    fn report_json_round_trips() {
        let f = FiniteField::new(3, 2).unwrap();
        let r = trace_scan(&x2yk(1), &f, Budget::default()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        for key in ["q", "word", "method", "image_trace_count", "misses_involutions", "surjective", "pairs_evaluated", "elapsed_ms", "modulus"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["method"], "trace_scan");
        let back: ImageReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
