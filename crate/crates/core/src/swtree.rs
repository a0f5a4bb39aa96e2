//! Online suffix tree over a sliding window.
//!
//! The tree is built with Ukkonen's algorithm and slides by deleting its
//! oldest leaf, following Larsson. The active point is kept at the longest
//! suffix of the pushed text that also occurs earlier inside the window
//! (the longest repeated suffix, LRS); all longer suffixes are leaves.
//!
//! Window start is `max(lrs_start, anchor) - capacity`. With a plain
//! [`Layer::push`] the anchor follows the text end and the window is the
//! last `capacity` symbols. An owner that reads ahead of its parse position
//! uses [`Layer::push_ahead`] and [`Layer::set_anchor`]; the window then
//! keeps `capacity` symbols before the parse position or the LRS start,
//! whichever is later, which is exactly what is needed to measure the
//! longest previous factor with an offset bound of `capacity`.
//!
//! Internal nodes store the start of one occurrence of their path. Those
//! positions go stale as the window slides; they are refreshed either with
//! Larsson's credit bits or, for the rightmost-position baseline, by
//! rewriting the whole insertion path.

use std::collections::VecDeque;
use std::ops::Range;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

type NodeId = u32;

const ROOT: NodeId = 0;
const NIL: NodeId = u32::MAX;
/// Longest text a layer accepts.
pub const MAX_SYMBOLS: usize = u32::MAX as usize - 1;
/// Virtual terminator used by [`Layer::finish`]; never equal to a byte.
const END: u16 = 256;

/// How internal node positions are kept inside the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Freshness {
    /// Credit bits; amortized constant work per inserted leaf.
    #[default]
    Credits,
    /// Every node from the insertion point to the root takes the new leaf's
    /// start, so each node holds its most recent occurrence.
    PathRefresh,
}

/// Work counters.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    /// Edges skipped while canonizing the active point.
    pub steps: u64,
    pub leaves_added: u64,
    pub leaves_removed: u64,
    /// Writes to node positions (credit propagation or path refresh).
    pub position_updates: u64,
    /// Stale positions repaired by descending to a leaf.
    pub repairs: u64,
}

impl TreeStats {
    pub fn total(&self) -> u64 {
        self.steps + self.leaves_added + self.leaves_removed + self.position_updates + self.repairs
    }
}

/// Positions and depths are stored in 32 bits; a layer accepts at most
/// [`MAX_SYMBOLS`] symbols.
#[derive(Debug, Clone)]
struct Node {
    /// Leaf: suffix start. Internal: start of some occurrence of the path.
    pos: u32,
    /// String depth (internal nodes only).
    depth: u32,
    parent: NodeId,
    link: NodeId,
    /// XOR of the children ids; the only child once `children == 1`.
    kids: NodeId,
    /// First symbol of the edge from the parent.
    key: u16,
    children: u16,
    credit: bool,
    leaf: bool,
}

impl Node {
    fn internal(pos: usize, depth: usize, parent: NodeId) -> Self {
        Node {
            pos: pos as u32,
            depth: depth as u32,
            parent,
            link: NIL,
            kids: 0,
            key: 0,
            children: 0,
            credit: false,
            leaf: false,
        }
    }

    fn leaf(pos: usize, parent: NodeId) -> Self {
        Node {
            leaf: true,
            ..Node::internal(pos, 0, parent)
        }
    }

    fn pos(&self) -> usize {
        self.pos as usize
    }

    fn depth(&self) -> usize {
        self.depth as usize
    }
}

fn edge_key(parent: NodeId, key: u16) -> (NodeId, u16) {
    (parent, key)
}

/// Canonical active point: `depth(node) + len` symbols down the tree,
/// the last `len` of them on the edge starting with `key`, which leads to
/// `child` (NIL while `len == 0`).
#[derive(Debug, Clone, Copy)]
struct Active {
    node: NodeId,
    key: u16,
    len: usize,
    child: NodeId,
}

/// One sliding-window suffix tree.
#[derive(Debug, Clone)]
pub struct Layer {
    capacity: usize,
    freshness: Freshness,
    nodes: Vec<Node>,
    free: Vec<NodeId>,
    /// `(parent, first symbol)` to child.
    edges: FxHashMap<(NodeId, u16), NodeId>,
    text: VecDeque<u8>,
    /// Global position of `text[0]`.
    base: usize,
    /// Symbols pushed.
    len: usize,
    /// Symbols integrated in the tree; trails `len` only inside a phase.
    tree_end: usize,
    /// End used for leaf depths (one past the terminator after `finish`).
    leaf_end: usize,
    /// Start of the longest repeated suffix; every suffix before it is a leaf.
    suffix: usize,
    window_start: usize,
    anchor: usize,
    /// Leaves by increasing start, `window_start..suffix`.
    leaves: VecDeque<NodeId>,
    active: Active,
    pending_link: NodeId,
    /// Longest previous factor for positions `lpf_from..`, as `(length, offset)`.
    lpf_log: Option<VecDeque<(usize, usize)>>,
    lpf_from: usize,
    finished: bool,
    stats: TreeStats,
}

impl Layer {
    /// Empty layer holding at most `capacity` symbols behind its anchor.
    pub fn new(capacity: usize) -> Result<Self> {
        Self::with_freshness(capacity, Freshness::Credits)
    }

    pub fn with_freshness(capacity: usize, freshness: Freshness) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::EmptyWindow);
        }
        Ok(Self {
            capacity,
            freshness,
            nodes: vec![Node::internal(0, 0, NIL)],
            free: Vec::new(),
            edges: FxHashMap::default(),
            text: VecDeque::new(),
            base: 0,
            len: 0,
            tree_end: 0,
            leaf_end: 0,
            suffix: 0,
            window_start: 0,
            anchor: 0,
            leaves: VecDeque::new(),
            active: Active {
                node: ROOT,
                key: 0,
                len: 0,
                child: NIL,
            },
            pending_link: NIL,
            lpf_log: None,
            lpf_from: 0,
            finished: false,
            stats: TreeStats::default(),
        })
    }

    /// Records the longest previous factor of every position at or after the
    /// anchor as it becomes known. Must be enabled before the first push.
    pub fn track_lpf(&mut self) {
        debug_assert_eq!(self.len, 0);
        self.lpf_log = Some(VecDeque::new());
        self.lpf_from = self.anchor;
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Symbols pushed so far; also the global position of the next one.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    /// Global positions currently indexed.
    pub fn window(&self) -> Range<usize> {
        self.window_start..self.len
    }

    pub fn window_len(&self) -> usize {
        self.len - self.window_start
    }

    pub fn window_bytes(&self) -> Vec<u8> {
        self.text
            .range(self.window_start - self.base..)
            .copied()
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len() - self.free.len()
    }

    pub fn stats(&self) -> TreeStats {
        self.stats
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Start of the longest repeated suffix; positions before it have a
    /// settled longest previous factor.
    pub fn lrs_start(&self) -> usize {
        self.suffix
    }

    /// Appends `symbol` and slides the window to the last `capacity` symbols.
    pub fn push(&mut self, symbol: u8) {
        self.push_ahead(symbol);
        self.set_anchor(self.len);
    }

    /// Appends `symbol` without moving the anchor.
    pub fn push_ahead(&mut self, symbol: u8) {
        assert!(!self.finished, "push after finish");
        assert!(
            self.len < MAX_SYMBOLS,
            "layer holds at most {MAX_SYMBOLS} symbols"
        );
        self.text.push_back(symbol);
        self.len += 1;
        self.leaf_end = self.len;
        self.phase(symbol as u16);
    }

    /// Moves the anchor forward to `anchor` (at most [`Layer::len`]) and
    /// evicts what no longer belongs to the window.
    pub fn set_anchor(&mut self, anchor: usize) {
        assert!(anchor >= self.anchor && anchor <= self.len);
        self.anchor = anchor;
        self.trim();
        if let Some(log) = self.lpf_log.as_mut() {
            while self.lpf_from < anchor && !log.is_empty() {
                log.pop_front();
                self.lpf_from += 1;
            }
            self.lpf_from = self.lpf_from.max(anchor);
        }
    }

    /// Closes the text with a unique terminator so that every suffix becomes
    /// a leaf and every tracked position gets its final answer. No further
    /// pushes are allowed.
    pub fn finish(&mut self) {
        if self.finished {
            return;
        }
        self.finished = true;
        self.leaf_end = self.len + 1;
        self.phase(END);
    }

    /// Global start of an occurrence of `pattern` lying fully inside the
    /// window. The empty pattern occurs at the current end.
    pub fn find(&self, pattern: &[u8]) -> Option<usize> {
        if pattern.is_empty() {
            return Some(self.len);
        }
        let mut node = ROOT;
        let mut matched = 0;
        loop {
            let child = self.child(node, pattern[matched] as u16)?;
            let start = self.fresh_pos_ro(child);
            let upto = self.depth(child).min(pattern.len());
            for (d, &c) in pattern.iter().enumerate().take(upto).skip(matched + 1) {
                if self.key_at(start + d) != c as u16 {
                    return None;
                }
            }
            if upto == pattern.len() {
                return Some(start);
            }
            matched = upto;
            node = child;
        }
    }

    /// `(length, start)` of the longest repeated suffix, with `start` an
    /// earlier occurrence inside the window; `None` when no suffix repeats.
    pub fn longest_repeated_suffix(&self) -> Option<(usize, usize)> {
        let len = self.tree_end - self.suffix;
        if len == 0 || self.finished {
            return None;
        }
        Some((len, self.fresh_pos_ro(self.locus())))
    }

    /// Longest previous factor at `position` (not before the anchor) among
    /// occurrences at most `capacity` back, as `(length, offset)`.
    /// Positions not yet settled get the longest factor the pushed text
    /// allows.
    pub(crate) fn lpf_at(&self, position: usize) -> (usize, usize) {
        debug_assert!(position >= self.anchor && position <= self.len);
        if let Some(log) = self.lpf_log.as_ref() {
            if position >= self.lpf_from && position - self.lpf_from < log.len() {
                return log[position - self.lpf_from];
            }
        }
        debug_assert!(position >= self.suffix || self.finished);
        let len = self.tree_end.saturating_sub(position);
        if len == 0 || self.finished {
            return (0, 0);
        }
        let occurrence = self.fresh_pos_ro(self.locus());
        (len, self.suffix - occurrence)
    }

    // ---------------------------------------------------------------- internals

    fn key_at(&self, pos: usize) -> u16 {
        if pos >= self.len {
            END
        } else {
            self.text[pos - self.base] as u16
        }
    }

    fn depth(&self, v: NodeId) -> usize {
        let n = &self.nodes[v as usize];
        if n.leaf {
            self.leaf_end - n.pos()
        } else {
            n.depth()
        }
    }

    fn edge_len(&self, v: NodeId) -> usize {
        self.depth(v) - self.depth(self.nodes[v as usize].parent)
    }

    /// Node at or just below the active point.
    fn locus(&self) -> NodeId {
        if self.active.len == 0 {
            self.active.node
        } else {
            debug_assert_eq!(
                self.child(self.active.node, self.active.key),
                Some(self.active.child)
            );
            self.active.child
        }
    }

    fn fresh_pos_ro(&self, v: NodeId) -> usize {
        let mut v = v;
        loop {
            let n = &self.nodes[v as usize];
            if n.leaf || n.pos() >= self.window_start {
                return n.pos();
            }
            v = self.any_child(v);
        }
    }

    fn fresh_pos(&mut self, v: NodeId) -> usize {
        let n = &self.nodes[v as usize];
        if n.leaf || n.pos() >= self.window_start {
            return n.pos();
        }
        let pos = self.fresh_pos_ro(v);
        self.stats.repairs += 1;
        let mut u = v;
        while !self.nodes[u as usize].leaf && self.nodes[u as usize].pos() < self.window_start {
            self.nodes[u as usize].pos = pos as u32;
            u = self.any_child(u);
        }
        pos
    }

    fn alloc(&mut self, node: Node) -> NodeId {
        if let Some(id) = self.free.pop() {
            self.nodes[id as usize] = node;
            id
        } else {
            self.nodes.push(node);
            (self.nodes.len() - 1) as NodeId
        }
    }

    fn release(&mut self, id: NodeId) {
        let n = &mut self.nodes[id as usize];
        n.kids = 0;
        n.children = 0;
        n.parent = NIL;
        n.link = NIL;
        self.free.push(id);
    }

    fn child(&self, v: NodeId, key: u16) -> Option<NodeId> {
        self.edges.get(&edge_key(v, key)).copied()
    }

    /// Hangs `child` below `v` on an edge starting with `key`.
    fn attach(&mut self, v: NodeId, key: u16, child: NodeId) {
        self.edges.insert(edge_key(v, key), child);
        let n = &mut self.nodes[v as usize];
        n.kids ^= child;
        n.children += 1;
        let c = &mut self.nodes[child as usize];
        c.parent = v;
        c.key = key;
    }

    fn detach(&mut self, v: NodeId, child: NodeId) {
        let key = self.nodes[child as usize].key;
        self.edges.remove(&edge_key(v, key));
        let n = &mut self.nodes[v as usize];
        n.kids ^= child;
        n.children -= 1;
    }

    /// Puts `new` in the place of child `old` of `v`, under the same key.
    fn replace_child(&mut self, v: NodeId, old: NodeId, new: NodeId) {
        let key = self.nodes[old as usize].key;
        self.edges.insert(edge_key(v, key), new);
        self.nodes[v as usize].kids ^= old ^ new;
        if self.active.child == old && self.active.len > 0 {
            self.active.child = new;
        }
        let n = &mut self.nodes[new as usize];
        n.parent = v;
        n.key = key;
    }

    /// Some child of internal node `v`; only needed to repair stale positions.
    fn any_child(&self, v: NodeId) -> NodeId {
        let n = &self.nodes[v as usize];
        if n.children == 1 {
            return n.kids;
        }
        (0..=END)
            .find_map(|k| self.child(v, k))
            .expect("internal node has children")
    }

    /// Position bookkeeping after a leaf starting at `start` hangs below `v`.
    fn note_leaf(&mut self, v: NodeId, start: usize) {
        let mut v = v;
        match self.freshness {
            Freshness::Credits => {
                let mut pos = start;
                while v != ROOT {
                    let n = &mut self.nodes[v as usize];
                    if n.pos() < pos {
                        n.pos = pos as u32;
                    } else {
                        pos = n.pos();
                    }
                    self.stats.position_updates += 1;
                    n.credit = !n.credit;
                    if n.credit {
                        break;
                    }
                    v = n.parent;
                }
            }
            Freshness::PathRefresh => {
                while v != ROOT {
                    let n = &mut self.nodes[v as usize];
                    n.pos = start as u32;
                    self.stats.position_updates += 1;
                    v = n.parent;
                }
            }
        }
    }

    fn record_lpf(&mut self, k: usize) {
        if self.lpf_log.is_none() || self.suffix < self.anchor {
            return;
        }
        let len = k - self.suffix;
        let offset = if len == 0 {
            0
        } else {
            let locus = self.locus();
            self.suffix - self.fresh_pos(locus)
        };
        let log = self.lpf_log.as_mut().unwrap();
        debug_assert_eq!(self.lpf_from + log.len(), self.suffix);
        log.push_back((len, offset));
    }

    /// Integrates the symbol at position `tree_end`.
    fn phase(&mut self, key: u16) {
        let k = self.tree_end;
        self.pending_link = NIL;
        loop {
            let Active { node, len, .. } = self.active;
            let mut split = None;
            let mut found = NIL;
            let extends = if len == 0 {
                found = self.child(node, key).unwrap_or(NIL);
                found != NIL
            } else {
                let child = self.locus();
                let depth = self.nodes[node as usize].depth() + len;
                let pos = self.fresh_pos(child);
                let next = self.key_at(pos + depth);
                split = Some((child, next, depth));
                next == key
            };

            if extends {
                if self.pending_link != NIL {
                    debug_assert_eq!(len, 0);
                    self.nodes[self.pending_link as usize].link = node;
                    self.pending_link = NIL;
                }
                if len == 0 {
                    self.active.key = key;
                    self.active.child = found;
                }
                self.active.len += 1;
                self.tree_end = k + 1;
                self.canonize();
                return;
            }

            self.record_lpf(k);
            let start = self.suffix;
            let leaf = self.alloc(Node::leaf(start, NIL));
            let attach = match split {
                None => {
                    self.attach(node, key, leaf);
                    if self.pending_link != NIL {
                        self.nodes[self.pending_link as usize].link = node;
                        self.pending_link = NIL;
                    }
                    node
                }
                Some((child, next, depth)) => {
                    let pos = self.fresh_pos(child);
                    let mid = self.alloc(Node::internal(pos, depth, node));
                    self.replace_child(node, child, mid);
                    self.attach(mid, next, child);
                    self.attach(mid, key, leaf);
                    if self.pending_link != NIL {
                        self.nodes[self.pending_link as usize].link = mid;
                    }
                    self.pending_link = mid;
                    mid
                }
            };
            self.nodes[leaf as usize].parent = attach;
            self.stats.leaves_added += 1;
            self.note_leaf(attach, start);
            self.leaves.push_back(leaf);
            self.suffix += 1;

            if start == k {
                // the new symbol opened its own leaf at the root
                debug_assert!(self.pending_link == NIL);
                self.tree_end = k + 1;
                self.trim();
                return;
            }
            self.follow_suffix_link();
            self.trim();
        }
    }

    /// Moves the active point from `T[s-1..k)` to `T[s..k)`.
    fn follow_suffix_link(&mut self) {
        if self.active.node == ROOT {
            if self.active.len > 0 {
                self.active.len -= 1;
                if self.active.len > 0 {
                    self.set_active_edge(self.key_at(self.suffix));
                } else {
                    self.active.child = NIL;
                }
            }
        } else {
            let link = self.nodes[self.active.node as usize].link;
            debug_assert!(link != NIL, "internal node without suffix link");
            self.active.node = link;
            if self.active.len > 0 {
                self.set_active_edge(self.active.key);
            }
        }
        self.canonize();
    }

    fn canonize(&mut self) {
        while self.active.len > 0 {
            let child = self.locus();
            let edge = self.edge_len(child);
            if self.active.len < edge {
                break;
            }
            self.stats.steps += 1;
            self.active.node = child;
            self.active.len -= edge;
            if self.active.len > 0 {
                self.set_active_edge(self.key_at(self.suffix + self.nodes[child as usize].depth()));
            } else {
                self.active.child = NIL;
            }
        }
    }

    fn set_active_edge(&mut self, key: u16) {
        self.active.key = key;
        self.active.child = self.child(self.active.node, key).expect("active edge");
    }

    fn trim(&mut self) {
        loop {
            let target = self.suffix.max(self.anchor).saturating_sub(self.capacity);
            if self.window_start >= target {
                break;
            }
            self.delete_oldest();
        }
        while self.base < self.window_start {
            self.text.pop_front();
            self.base += 1;
        }
    }

    fn delete_oldest(&mut self) {
        let leaf = self.leaves.pop_front().expect("window holds a leaf");
        debug_assert_eq!(self.nodes[leaf as usize].pos(), self.window_start);
        self.window_start += 1;
        self.stats.leaves_removed += 1;
        let parent = self.nodes[leaf as usize].parent;

        if self.active.len > 0 && self.locus() == leaf {
            // The repeated suffix only occurs on this leaf: it becomes the
            // leaf instead, and the next suffix takes over.
            debug_assert!(self.pending_link == NIL);
            debug_assert!(self.suffix < self.anchor || self.finished);
            let start = self.suffix;
            self.nodes[leaf as usize].pos = start as u32;
            self.leaves.push_back(leaf);
            self.stats.leaves_added += 1;
            self.note_leaf(parent, start);
            self.suffix += 1;
            self.follow_suffix_link();
            return;
        }

        self.detach(parent, leaf);
        self.release(leaf);
        if parent != ROOT && self.nodes[parent as usize].children == 1 {
            self.merge(parent);
        }
    }

    /// Removes unary internal node `p`, splicing its only child into its parent.
    fn merge(&mut self, p: NodeId) {
        let child = self.nodes[p as usize].kids;
        let grand = self.nodes[p as usize].parent;
        let grand_depth = self.nodes[grand as usize].depth();
        let key = self.nodes[p as usize].key;
        self.detach(p, child);
        self.replace_child(grand, p, child);

        if self.active.node == p {
            self.active.node = grand;
            self.active.len += self.nodes[p as usize].depth() - grand_depth;
            self.active.key = key;
            self.active.child = child;
        }
        if self.pending_link == p {
            self.pending_link = NIL;
        }

        let (pos, credit) = {
            let n = &self.nodes[p as usize];
            (n.pos(), n.credit)
        };
        if pos >= self.window_start {
            let c = &mut self.nodes[child as usize];
            if !c.leaf && c.pos() < pos {
                c.pos = pos as u32;
            }
            if credit && self.freshness == Freshness::Credits {
                self.note_leaf(grand, pos);
            }
        }
        self.release(p);
    }

    /// Structural self-check used by tests.
    #[cfg(test)]
    pub(crate) fn check(&self) {
        let mut leaves = 0;
        let mut edges = 0;
        let mut stack = vec![ROOT];
        while let Some(v) = stack.pop() {
            let n = &self.nodes[v as usize];
            if n.leaf {
                leaves += 1;
                assert!(n.pos() >= self.window_start && n.pos() < self.suffix);
                continue;
            }
            let children: Vec<NodeId> = (0..=END).filter_map(|k| self.child(v, k)).collect();
            assert_eq!(children.len(), n.children as usize);
            assert_eq!(children.iter().fold(0, |x, &c| x ^ c), n.kids);
            if v != ROOT {
                assert!(children.len() >= 2, "unary internal node");
                assert!(self.fresh_pos_ro(v) >= self.window_start);
            }
            edges += children.len();
            for c in children {
                let key = self.nodes[c as usize].key;
                assert_eq!(self.nodes[c as usize].parent, v);
                assert_eq!(self.child(v, key), Some(c));
                assert_eq!(self.key_at(self.fresh_pos_ro(c) + n.depth()), key);
                assert!(self.depth(c) > n.depth());
                stack.push(c);
            }
        }
        assert_eq!(leaves, self.leaves.len());
        assert_eq!(edges, self.edges.len());
        assert_eq!(leaves, self.suffix - self.window_start);
        for (i, &leaf) in self.leaves.iter().enumerate() {
            assert_eq!(self.nodes[leaf as usize].pos(), self.window_start + i);
        }
        let active_depth = self.nodes[self.active.node as usize].depth() + self.active.len;
        assert_eq!(active_depth, self.tree_end - self.suffix);
        if self.active.len > 0 {
            assert!(self.active.len < self.edge_len(self.locus()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::collections::HashSet;

    fn layer_with(capacity: usize, text: &[u8]) -> Layer {
        let mut layer = Layer::new(capacity).unwrap();
        for &b in text {
            layer.push(b);
            layer.check();
        }
        layer
    }

    /// Longest suffix of `window` that also starts earlier in `window`.
    fn naive_lrs(window: &[u8]) -> usize {
        let n = window.len();
        (0..n)
            .rev()
            .find(|&l| (0..n - l).any(|j| window[j..j + l] == window[n - l..]))
            .unwrap_or(0)
    }

    fn factors(window: &[u8], max_len: usize) -> HashSet<Vec<u8>> {
        let mut set = HashSet::new();
        for i in 0..window.len() {
            for l in 1..=max_len.min(window.len() - i) {
                set.insert(window[i..i + l].to_vec());
            }
        }
        set
    }

    #[test]
    fn zero_capacity_rejected() {
        assert_eq!(Layer::new(0).unwrap_err(), Error::EmptyWindow);
    }

    #[test]
    fn create_examples() {
        let layer = Layer::new(1).unwrap();
        assert_eq!(layer.window_bytes(), b"");
        assert_eq!(layer.longest_repeated_suffix(), None);

        let layer = layer_with(6, b"ababaa");
        assert_eq!(layer.window_bytes(), b"ababaa");
        let layer = layer_with(3, b"ababaa");
        assert_eq!(layer.window_bytes(), b"baa");
        assert_eq!(layer.window(), 3..6);
    }

    #[test]
    fn push_examples() {
        let layer = layer_with(4, b"a");
        assert_eq!(layer.window_bytes(), b"a");
        assert_eq!(layer.longest_repeated_suffix(), None);

        assert_eq!(
            layer_with(4, b"abab").longest_repeated_suffix(),
            Some((2, 0))
        );
        assert_eq!(
            layer_with(8, b"aaaa").longest_repeated_suffix(),
            Some((3, 0))
        );
        assert_eq!(layer_with(2, b"ab").longest_repeated_suffix(), None);

        let layer = layer_with(6, b"ababaa");
        let expected = factors(b"ababaa", 6);
        for f in &expected {
            assert!(layer.find(f).is_some(), "{f:?}");
        }
        assert!(layer.node_count() <= 2 * 6 + 1);
    }

    #[test]
    fn find_examples() {
        let layer = layer_with(6, b"ababaa");
        assert!(matches!(layer.find(b"ba"), Some(1 | 3)));
        assert_eq!(layer.find(b"c"), None);
        assert_eq!(layer.find(b""), Some(6));

        let layer = layer_with(3, b"ababaa");
        assert_eq!(layer.find(b"ab"), None);
        assert_eq!(layer.find(b"baa"), Some(3));
    }

    #[test]
    fn runs_slide_through_relabels() {
        let mut layer = Layer::new(3).unwrap();
        for i in 0..50 {
            layer.push(b'a');
            layer.check();
            let expected = (i + 1).min(3) - 1;
            let lrs = layer.longest_repeated_suffix().map_or(0, |(l, _)| l);
            assert_eq!(lrs, expected);
        }
        assert_eq!(layer.find(b"aaa"), Some(47));
        assert_eq!(layer.find(b"aaaa"), None);
    }

    fn random_text(rng: &mut StdRng, len: usize, alphabet: u8) -> Vec<u8> {
        (0..len)
            .map(|_| b'a' + rng.gen_range(0..alphabet))
            .collect()
    }

    #[test]
    fn matches_naive_window_on_random_texts() {
        let mut rng = StdRng::seed_from_u64(7);
        for &alphabet in &[2u8, 4, 26] {
            for &capacity in &[1usize, 3, 7, 16, 512] {
                for _ in 0..3 {
                    let len = rng.gen_range(0..=512);
                    let text = random_text(&mut rng, len, alphabet);
                    let mut layer = Layer::new(capacity).unwrap();
                    for (i, &b) in text.iter().enumerate() {
                        layer.push(b);
                        layer.check();
                        let lo = (i + 1).saturating_sub(capacity);
                        let window = &text[lo..=i];
                        assert_eq!(layer.window(), lo..i + 1);
                        assert!(layer.node_count() <= 2 * window.len() + 1);
                        let lrs = layer.longest_repeated_suffix();
                        let expected = naive_lrs(window);
                        match lrs {
                            None => assert_eq!(expected, 0),
                            Some((l, p)) => {
                                assert_eq!(l, expected);
                                assert!(p >= lo && p + l <= i + 1 && p < i + 1 - l);
                                assert_eq!(text[p..p + l], text[i + 1 - l..=i]);
                            }
                        }
                    }
                    let lo = text.len().saturating_sub(capacity);
                    let window = &text[lo..];
                    let present = factors(window, 8);
                    for f in &present {
                        let p = layer.find(f).expect("factor present");
                        assert!(p >= lo && p + f.len() <= text.len());
                        assert_eq!(&text[p..p + f.len()], &f[..]);
                    }
                    let mut absent = 0;
                    while absent < 100 {
                        let l = rng.gen_range(1..=8);
                        let f = random_text(&mut rng, l, alphabet);
                        if !present.contains(&f) {
                            assert_eq!(layer.find(&f), None);
                            absent += 1;
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn anchored_window_retains_lrs_extension() {
        // Pushing ahead keeps `capacity` symbols before the repeated suffix.
        let text = b"abcabcabcabcx";
        let mut layer = Layer::new(3).unwrap();
        layer.track_lpf();
        for &b in text {
            layer.push_ahead(b);
            layer.check();
        }
        // LPF(3) = "abcabcabc" at offset 3
        assert_eq!(layer.lpf_at(3), (9, 3));
        assert_eq!(layer.lpf_at(0), (0, 0));
        assert_eq!(layer.lpf_at(12), (0, 0));
        layer.set_anchor(13);
        layer.check();
        assert_eq!(layer.window(), 10..13);
    }

    #[test]
    fn finish_resolves_all_positions() {
        let text = b"abaababa";
        let mut layer = Layer::new(text.len()).unwrap();
        layer.track_lpf();
        for &b in text {
            layer.push_ahead(b);
        }
        layer.finish();
        layer.check();
        let lpfs: Vec<usize> = (0..text.len()).map(|i| layer.lpf_at(i).0).collect();
        assert_eq!(lpfs, vec![0, 0, 1, 3, 2, 3, 2, 1]);
    }
}
