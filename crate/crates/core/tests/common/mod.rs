use std::collections::HashSet;

use wordmap::word::{free_reduce, Letter, Word};

/// Every reduced word of length exactly `len`.
pub fn reduced_words(len: usize) -> Vec<Word> {
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for w in &layer {
            for l in Letter::ALL {
                if w.last().is_some_and(|&last| last == l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        layer = next;
    }
    layer.into_iter().map(free_reduce).collect()
}

/// The proper powers of length `<= max_len`, built bottom-up as `v^m`, `m >= 2`.
pub fn proper_powers_up_to(max_len: usize) -> HashSet<Word> {
    let mut out = HashSet::new();
    for len in 1..max_len {
        for v in reduced_words(len) {
            let mut m = 2;
            loop {
                let p = v.pow(m);
                if p.len() > max_len {
                    break;
                }
                out.insert(p);
                m += 1;
            }
        }
    }
    out
}
