//! Brute-force references and the rightmost-position baseline.
//!
//! The naive functions scan the text directly and are quadratic or worse;
//! keep inputs to a few thousand symbols. Offsets use `d = i - j`, the
//! distance from the current position back to the occurrence start.

use std::time::{Duration, Instant};

use crate::cost_model::CostModel;
use crate::mlst::MatchRef;
use crate::swtree::{Freshness, Layer, TreeStats};

/// Smallest `d` such that `p` occurs at `i - d` and ends by `i`; 0 if absent.
pub fn naive_rightmost(text: &[u8], i: usize, p: &[u8]) -> usize {
    assert!(i <= text.len());
    if p.len() > i {
        return 0;
    }
    (0..=i - p.len())
        .rev()
        .find(|&j| &text[j..j + p.len()] == p)
        .map_or(0, |j| i - j)
}

/// Rightmost earlier start of the factor `text[i..i+len)`, overlap allowed,
/// at most `max_offset` back. Returns the offset or 0.
pub fn naive_rightmost_match(text: &[u8], i: usize, len: usize, max_offset: usize) -> usize {
    let target = &text[i..i + len];
    let lo = i.saturating_sub(max_offset);
    (lo..i)
        .rev()
        .find(|&j| &text[j..j + len] == target)
        .map_or(0, |j| i - j)
}

/// Leftmost earlier start of `text[i..i+len)` within `max_offset`; offset or 0.
pub fn naive_leftmost_match(text: &[u8], i: usize, len: usize, max_offset: usize) -> usize {
    let target = &text[i..i + len];
    let lo = i.saturating_sub(max_offset);
    (lo..i)
        .find(|&j| &text[j..j + len] == target)
        .map_or(0, |j| i - j)
}

/// Longest factor starting at `i` that also starts at some `j < i`
/// (overlap allowed). Returns `(length, Some(j))` for the leftmost such
/// `j`, or `(0, None)`.
pub fn naive_lpf(text: &[u8], i: usize) -> (usize, Option<usize>) {
    naive_lpf_within(text, i, usize::MAX)
}

/// [`naive_lpf`] restricted to occurrences at most `max_offset` back.
pub fn naive_lpf_within(text: &[u8], i: usize, max_offset: usize) -> (usize, Option<usize>) {
    let mut best = (0, None);
    for j in i.saturating_sub(max_offset)..i {
        let l = text[j..]
            .iter()
            .zip(&text[i..])
            .take_while(|(a, b)| a == b)
            .count();
        if l > best.0 {
            best = (l, Some(j));
        }
    }
    best
}

/// `(m, rightmost offset)` for every prefix length `m` of the LPF at `i`.
/// The cost model is carried for parity with the cost-class view; offsets
/// are exact.
pub fn naive_spf(text: &[u8], i: usize, _model: CostModel) -> Vec<(usize, usize)> {
    if i >= text.len() {
        return Vec::new();
    }
    let (lpf, _) = naive_lpf(text, i);
    (1..=lpf)
        .map(|m| (m, naive_rightmost_match(text, i, m, usize::MAX)))
        .collect()
}

/// Single sliding-window suffix tree whose nodes carry their most recent
/// occurrence, refreshed along the whole insertion path on every leaf.
#[derive(Debug, Clone)]
pub struct RmstBaseline {
    tree: Layer,
    answers: Vec<MatchRef>,
}

impl RmstBaseline {
    pub fn new(max_window: usize) -> crate::Result<Self> {
        let mut tree = Layer::with_freshness(max_window, Freshness::PathRefresh)?;
        tree.track_lpf();
        Ok(Self {
            tree,
            answers: Vec::new(),
        })
    }

    pub fn push(&mut self, symbol: u8) {
        self.tree.push_ahead(symbol);
        self.collect(self.tree.lrs_start());
    }

    /// Settles every remaining position.
    pub fn finish(&mut self) {
        self.tree.finish();
        self.collect(self.tree.len());
    }

    /// Longest previous factor and its rightmost offset for every settled position.
    pub fn answers(&self) -> &[MatchRef] {
        &self.answers
    }

    pub fn stats(&self) -> TreeStats {
        self.tree.stats()
    }

    pub fn tree(&self) -> &Layer {
        &self.tree
    }

    fn collect(&mut self, settled: usize) {
        while self.answers.len() < settled {
            let (length, offset) = self.tree.lpf_at(self.answers.len());
            self.answers.push(MatchRef { length, offset });
            self.tree.set_anchor(self.answers.len());
        }
    }
}

/// Outcome of one baseline build.
#[derive(Debug, Clone)]
pub struct RmstRun {
    pub answers: Vec<MatchRef>,
    pub elapsed: Duration,
    pub stats: TreeStats,
}

/// Builds the baseline over `text` with window `max_window` and returns the
/// per-position rightmost LPF references with timing.
pub fn rmst_build_and_query(text: &[u8], max_window: usize) -> crate::Result<RmstRun> {
    let start = Instant::now();
    let mut rmst = RmstBaseline::new(max_window)?;
    for &b in text {
        rmst.push(b);
    }
    rmst.finish();
    let elapsed = start.elapsed();
    Ok(RmstRun {
        stats: rmst.stats(),
        answers: rmst.answers,
        elapsed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn rightmost_examples() {
        assert_eq!(naive_rightmost(b"babcabbababb", 12, b"abb"), 3);
        assert_eq!(naive_rightmost(b"ababaa", 6, b"ba"), 3);
        assert_eq!(naive_rightmost(b"ababaa", 6, b"c"), 0);
        assert_eq!(naive_rightmost(b"ababaa", 2, b"aba"), 0);
        assert_eq!(naive_rightmost(b"", 0, b"a"), 0);
    }

    #[test]
    fn lpf_examples() {
        assert_eq!(naive_lpf(b"ababaa", 2), (3, Some(0)));
        assert_eq!(naive_lpf(b"abc", 0), (0, None));
        assert_eq!(naive_lpf(b"aaaa", 1), (3, Some(0)));
    }

    #[test]
    fn spf_examples() {
        assert_eq!(
            naive_spf(b"abbaab", 4, CostModel::Gamma),
            vec![(1, 1), (2, 4)]
        );
        assert_eq!(
            naive_spf(b"aabbab", 4, CostModel::Gamma),
            vec![(1, 3), (2, 3)]
        );
        assert_eq!(naive_spf(b"abc", 0, CostModel::Gamma), vec![]);
    }

    #[test]
    fn spf_last_entry_is_lpf_rightmost() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let text: Vec<u8> = (0..200).map(|_| rng.gen_range(b'a'..b'd')).collect();
            for i in 0..text.len() {
                let spf = naive_spf(&text, i, CostModel::Gamma);
                let (lpf, _) = naive_lpf(&text, i);
                assert_eq!(spf.len(), lpf);
                if let Some(&(m, d)) = spf.last() {
                    assert_eq!(m, lpf);
                    assert_eq!(d, naive_rightmost_match(&text, i, lpf, usize::MAX));
                }
            }
        }
    }

    fn check_rmst(text: &[u8], window: usize) {
        let run = rmst_build_and_query(text, window).unwrap();
        assert_eq!(run.answers.len(), text.len());
        for (i, ans) in run.answers.iter().enumerate() {
            let (lpf, _) = naive_lpf_within(text, i, window);
            assert_eq!(ans.length, lpf, "length at {i}");
            let expected = if lpf == 0 {
                0
            } else {
                naive_rightmost_match(text, i, lpf, window)
            };
            assert_eq!(ans.offset, expected, "offset at {i}");
        }
    }

    #[test]
    fn rmst_tiny_and_empty() {
        check_rmst(b"ababaa", 6);
        let run = rmst_build_and_query(b"", 6).unwrap();
        assert!(run.answers.is_empty());
    }

    #[test]
    fn rmst_matches_naive_rightmost() {
        let mut rng = StdRng::seed_from_u64(3);
        for round in 0..40 {
            let alphabet = [2u8, 4, 26][round % 3];
            let len = rng.gen_range(0..=2048);
            let text: Vec<u8> = (0..len)
                .map(|_| b'a' + rng.gen_range(0..alphabet))
                .collect();
            let window = if round % 2 == 0 {
                len.max(1)
            } else {
                rng.gen_range(1..=64)
            };
            check_rmst(&text, window);
        }
    }

    fn split_runs(m: usize) -> Vec<u8> {
        let mut text = vec![b'a'; m];
        text.push(b'b');
        text.extend(std::iter::repeat_n(b'a', m));
        text.push(b'c');
        text
    }

    #[test]
    fn rmst_path_updates_grow_quadratically_on_split_runs() {
        let small = rmst_build_and_query(&split_runs(512), 4096).unwrap();
        let large = rmst_build_and_query(&split_runs(2048), 4096).unwrap();
        let (a, b) = (small.stats.position_updates, large.stats.position_updates);
        assert!(b > 12 * a, "{a} -> {b}");
    }

    #[test]
    fn rmst_path_updates_stay_linear_on_a_single_run() {
        // leaves of a^n are inserted deepest first, so every path is short
        let small = rmst_build_and_query(&vec![b'a'; 1024], 4096).unwrap();
        let large = rmst_build_and_query(&vec![b'a'; 4096], 4096).unwrap();
        assert!(large.stats.position_updates <= 5 * small.stats.position_updates);
    }
}
