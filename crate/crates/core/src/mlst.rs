//! The multilayer suffix tree.
//!
//! One [`Layer`] per cost class: layer `x` indexes the last `sw_x` symbols,
//! where `sw_x` is the largest offset whose codeword is at most `b_x` bits.
//! A factor present in layer `x` but not in layer `x - 1` has its closest
//! occurrence at an offset in `(sw_{x-1}, sw_x]`, so any occurrence reported
//! by layer `x` costs the same number of bits as the closest one.
//!
//! The index distinguishes the parse position `i` ([`MultiIndex::time`]) from
//! the symbols pushed so far. Symbols pushed beyond `i` are lookahead; they
//! let every layer settle the longest previous factor (LPF) at `i`, after
//! which [`MultiIndex::rep_lpf`] and [`MultiIndex::rep_spf`] are plain reads.

use crate::cost_model::{CostModel, LayerSizes};
use crate::error::{Error, Result};
use crate::swtree::{Layer, TreeStats};

/// A `(length, offset)` reference; offset 0 means "no occurrence".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MatchRef {
    pub length: usize,
    pub offset: usize,
}

impl MatchRef {
    pub fn new(length: usize, offset: usize) -> Self {
        Self { length, offset }
    }

    pub fn is_found(&self) -> bool {
        self.offset != 0
    }
}

/// One reference per distinct cost class among the prefixes of the LPF,
/// longest first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpfList {
    entries: Vec<MatchRef>,
}

impl SpfList {
    pub fn entries(&self) -> &[MatchRef] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reference for the prefix of length `m`: the entry `(l_t, d_t)` with
    /// `l_{t+1} < m <= l_t`, returned as `(m, d_t)`.
    pub fn covering(&self, m: usize) -> Option<MatchRef> {
        if m == 0 {
            return None;
        }
        self.entries
            .iter()
            .rev()
            .find(|e| e.length >= m)
            .map(|e| MatchRef::new(m, e.offset))
    }

    fn rebuild(&mut self, per_layer: &[MatchRef]) {
        self.entries.clear();
        for r in per_layer.iter().rev() {
            if r.length == 0 {
                break;
            }
            match self.entries.last_mut() {
                Some(last) if last.length == r.length => last.offset = r.offset,
                _ => self.entries.push(*r),
            }
        }
    }
}

/// Layers for every cost class up to a maximum window.
#[derive(Debug, Clone)]
pub struct MultiIndex {
    model: CostModel,
    sizes: LayerSizes,
    layers: Vec<Layer>,
    time: usize,
    pushed: usize,
    finished: bool,
    /// Per-layer LPF at `time`, smallest layer first.
    layer_lpf: Vec<MatchRef>,
    spf: SpfList,
}

impl MultiIndex {
    /// Empty index whose largest layer spans `max_window` symbols.
    pub fn new(model: CostModel, max_window: usize) -> Result<Self> {
        let sizes = LayerSizes::new(model, max_window)?;
        let layers = sizes
            .sizes()
            .iter()
            .map(|&size| {
                let mut layer = Layer::new(size)?;
                layer.track_lpf();
                Ok(layer)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            model,
            layer_lpf: vec![MatchRef::default(); layers.len()],
            sizes,
            layers,
            time: 0,
            pushed: 0,
            finished: false,
            spf: SpfList::default(),
        })
    }

    pub fn model(&self) -> CostModel {
        self.model
    }

    pub fn layer_sizes(&self) -> &LayerSizes {
        &self.sizes
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn max_window(&self) -> usize {
        *self.sizes.sizes().last().unwrap()
    }

    /// Parse position `i`.
    pub fn time(&self) -> usize {
        self.time
    }

    /// Symbols pushed, parsed or not.
    pub fn pushed(&self) -> usize {
        self.pushed
    }

    pub fn lookahead(&self) -> usize {
        self.pushed - self.time
    }

    /// Sum of the current window lengths of all layers.
    pub fn total_window_len(&self) -> usize {
        self.layers.iter().map(Layer::window_len).sum()
    }

    pub fn stats(&self) -> TreeStats {
        self.layers.iter().fold(TreeStats::default(), |acc, l| {
            let s = l.stats();
            TreeStats {
                steps: acc.steps + s.steps,
                leaves_added: acc.leaves_added + s.leaves_added,
                leaves_removed: acc.leaves_removed + s.leaves_removed,
                position_updates: acc.position_updates + s.position_updates,
                repairs: acc.repairs + s.repairs,
            }
        })
    }

    /// Appends `symbol` after the parse position without consuming it.
    pub fn push(&mut self, symbol: u8) {
        assert!(!self.finished, "push after finish");
        for layer in &mut self.layers {
            layer.push_ahead(symbol);
        }
        self.pushed += 1;
        self.refresh();
    }

    /// Consumes `symbol` at the parse position. Only valid without lookahead.
    pub fn advance(&mut self, symbol: u8) -> Result<()> {
        if self.lookahead() != 0 {
            return Err(Error::LookaheadPending {
                pending: self.lookahead(),
            });
        }
        self.push(symbol);
        self.consume(1)
    }

    /// Moves the parse position over `n` pushed symbols.
    pub fn consume(&mut self, n: usize) -> Result<()> {
        if n > self.lookahead() {
            return Err(Error::NotEnoughLookahead {
                requested: n,
                available: self.lookahead(),
            });
        }
        self.time += n;
        for layer in &mut self.layers {
            layer.set_anchor(self.time);
        }
        self.refresh();
        Ok(())
    }

    /// Marks the end of the text; remaining positions settle for good.
    pub fn finish(&mut self) {
        if self.finished {
            return;
        }
        self.finished = true;
        for layer in &mut self.layers {
            layer.finish();
        }
        self.refresh();
    }

    /// True once more input cannot change the LPF at the parse position.
    pub fn is_settled(&self) -> bool {
        self.finished || self.layers.last().unwrap().lrs_start() > self.time
    }

    /// REP of `pattern` over the text before the parse position: an
    /// occurrence whose offset has the same codeword length as the closest
    /// one, or offset 0 when the pattern does not occur within the window.
    pub fn rep_pattern(&self, pattern: &[u8]) -> Result<MatchRef> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if self.lookahead() != 0 || self.finished {
            return Err(Error::LookaheadPending {
                pending: self.lookahead(),
            });
        }
        // presence is monotone in the layer size
        let first = self.layers.partition_point(|l| l.find(pattern).is_none());
        let offset = match self.layers.get(first) {
            Some(layer) => self.time - layer.find(pattern).expect("present"),
            None => 0,
        };
        Ok(MatchRef::new(pattern.len(), offset))
    }

    /// REP of the longest previous factor at the parse position.
    pub fn rep_lpf(&self) -> MatchRef {
        self.spf.entries.first().copied().unwrap_or_default()
    }

    /// REP references for the prefixes of the longest previous factor.
    pub fn rep_spf(&self) -> &SpfList {
        &self.spf
    }

    /// LPF at the parse position as seen by each layer, smallest first.
    pub fn layer_lpf(&self) -> &[MatchRef] {
        &self.layer_lpf
    }

    fn refresh(&mut self) {
        for (slot, layer) in self.layer_lpf.iter_mut().zip(&self.layers) {
            let (length, offset) = layer.lpf_at(self.time);
            *slot = MatchRef::new(length, offset);
        }
        self.spf.rebuild(&self.layer_lpf);
    }
}

/// REP(LPF) at every position of `text`, with the index settling each
/// position before it is read.
pub fn lpf_refs(text: &[u8], model: CostModel, max_window: usize) -> Result<Vec<MatchRef>> {
    Ok(lpf_refs_with_stats(text, model, max_window)?.0)
}

/// [`lpf_refs`] plus the work counters summed over all layers.
pub fn lpf_refs_with_stats(
    text: &[u8],
    model: CostModel,
    max_window: usize,
) -> Result<(Vec<MatchRef>, TreeStats)> {
    let mut index = MultiIndex::new(model, max_window)?;
    let mut refs = Vec::with_capacity(text.len());
    for &b in text {
        index.push(b);
        while index.is_settled() && index.time() < index.pushed() {
            refs.push(index.rep_lpf());
            index.consume(1)?;
        }
    }
    index.finish();
    while index.time() < index.pushed() {
        refs.push(index.rep_lpf());
        index.consume(1)?;
    }
    Ok((refs, index.stats()))
}
