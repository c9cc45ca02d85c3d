//! The fixed word corpus used by the invariant suites and `--seed-corpus`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::word::{free_reduce, Letter, Shape, Sign, Word, WordFamily};

const SEED: u64 = 0x5eed_f00d;
const RANDOM_WORDS: usize = 24;

/// A reduced word of exactly `len` letters, drawn uniformly letter by letter
/// among the non-cancelling choices.
pub fn random_reduced_word<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::ALL[rng.gen_range(0..4)];
        if letters.last().is_some_and(|&last| last == l.inverse()) {
            continue;
        }
        letters.push(l);
    }
    free_reduce(letters)
}

/// Generators, `y_k` for `|k| <= 4`, every family word with `k <= 4`, the
/// commutator, `x1^2 [x1^-2, x2^-1]^2`, and seeded random
/// words of length at most 12.
pub fn standard_corpus() -> Vec<Word> {
    let mut out: Vec<Word> = ["1", "x1", "x2", "x1^-1", "x2^-1", "x1 x2", "x1^2", "[x1,x2]", "x1^2 [x1^-2, x2^-1]^2"]
        .iter()
        .map(|s| s.parse().expect("corpus literal parses"))
        .collect();
    for inner in [Sign::Plus, Sign::Minus] {
        for k in -4..=4 {
            out.push(WordFamily::y(inner, k));
        }
        for k in 1..=4 {
            let family = WordFamily { inner, k };
            for shape in Shape::ALL {
                out.push(family.build(shape));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_WORDS {
        let len = rng.gen_range(1..=12);
        out.push(random_reduced_word(&mut rng, len));
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|w| seen.insert(w.clone()));
    out
}
