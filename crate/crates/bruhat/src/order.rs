//! Bruhat order: comparisons, covering relations, materialized
//! intervals, maximal chains and their deletion labels.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::group::{multiply, Element, Group, Reflection, Side, Word};

/// Chain enumeration refuses intervals longer than this.
pub const MAX_CHAIN_INTERVAL_LENGTH: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("elements are not comparable in Bruhat order")]
    NotComparable,
    #[error("interval length {length} exceeds chain enumeration cap {cap}")]
    ChainCapExceeded { length: usize, cap: usize },
    #[error("word is not a reduced word for the chain's top element")]
    WordMismatch,
    #[error("chain is not a saturated chain of the ambient order")]
    ChainMismatch,
}

/// Identifies a concrete interval: ambient group plus the windows of
/// its endpoints.
pub type IntervalKey = (Group, Vec<i8>, Vec<i8>);

/// Bruhat order comparison via the lifting recursion on left descents.
///
/// Each step strips one left descent from the larger element, so a
/// query costs `O(length)` group operations. Panics if the groups
/// differ.
pub fn leq(u: &Element, v: &Element) -> bool {
    assert_eq!(u.group(), v.group(), "elements from different groups");
    let mut u = u.clone();
    let mut v = v.clone();
    loop {
        if u == v {
            return true;
        }
        if u.length() >= v.length() {
            return false;
        }
        // v is not the identity here, so it has a left descent.
        let s = (1..=v.group().rank())
            .find(|&i| v.has_left_descent(i))
            .expect("non-identity element has a left descent");
        v = v.left_mul_gen(s);
        if u.has_left_descent(s) {
            u = u.left_mul_gen(s);
        }
    }
}

/// Elements covered by `v`, in window order.
pub fn covers(v: &Element) -> Vec<Element> {
    let reflections: Vec<Element> = v
        .group()
        .reflections()
        .into_iter()
        .map(Reflection::into_element)
        .collect();
    covers_with(v, &reflections)
}

pub(crate) fn covers_with(v: &Element, reflections: &[Element]) -> Vec<Element> {
    let lv = v.length();
    if lv == 0 {
        return Vec::new();
    }
    let mut out: Vec<Element> = reflections
        .iter()
        .map(|t| multiply(v, t))
        .filter(|x| x.length() + 1 == lv)
        .collect();
    out.sort();
    out
}

/// A materialized closed interval `[u, v]`, graded by
/// `length(x) - length(u)`.
///
/// Vertices are sorted by (rank, window) and addressed by their index
/// in that order, so vertex `0` is the bottom and the last vertex is
/// the top.
#[derive(Clone)]
pub struct Interval {
    group: Group,
    bottom: Element,
    top: Element,
    vertices: Vec<Element>,
    index: HashMap<Vec<i8>, u32>,
    ranks: Vec<u8>,
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
    levels: Vec<Vec<u32>>,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Interval[{}, {}]@{} (length {}, {} vertices)",
            self.bottom,
            self.top,
            self.group,
            self.length(),
            self.vertices.len()
        )
    }
}

impl Interval {
    pub fn group(&self) -> Group {
        self.group
    }

    pub fn bottom(&self) -> &Element {
        &self.bottom
    }

    pub fn top(&self) -> &Element {
        &self.top
    }

    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn rank_of(&self, vid: u32) -> usize {
        self.ranks[vid as usize] as usize
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    /// Covers of the vertex inside the interval, one rank up.
    pub fn up(&self, vid: u32) -> &[u32] {
        &self.up[vid as usize]
    }

    /// Elements covered by the vertex inside the interval.
    pub fn down(&self, vid: u32) -> &[u32] {
        &self.down[vid as usize]
    }

    /// Vertex ids at each rank, ascending.
    pub fn levels(&self) -> &[Vec<u32>] {
        &self.levels
    }

    pub fn index_of(&self, x: &Element) -> Option<u32> {
        self.index.get(x.window()).copied()
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.group() == self.group && self.index.contains_key(x.window())
    }

    pub fn key(&self) -> IntervalKey {
        (
            self.group,
            self.bottom.window().to_vec(),
            self.top.window().to_vec(),
        )
    }

    pub fn bottom_vid(&self) -> u32 {
        0
    }

    pub fn top_vid(&self) -> u32 {
        self.vertices.len() as u32 - 1
    }
}

/// Materializes `[u, v]` by downward search from `v` through covering
/// relations, pruned by `leq(u, _)`.
pub fn interval(u: &Element, v: &Element) -> Result<Interval, OrderError> {
    assert_eq!(u.group(), v.group(), "elements from different groups");
    if !leq(u, v) {
        return Err(OrderError::NotComparable);
    }
    let group = u.group();
    let reflections: Vec<Element> = group
        .reflections()
        .into_iter()
        .map(Reflection::into_element)
        .collect();
    let base_len = u.length();

    // in_interval caches the membership verdict per visited window
    let mut in_interval: HashMap<Vec<i8>, bool> = HashMap::new();
    in_interval.insert(v.window().to_vec(), true);
    let mut stack = vec![v.clone()];
    let mut members = vec![v.clone()];
    while let Some(x) = stack.pop() {
        for y in covers_with(&x, &reflections) {
            if y.length() < base_len {
                continue;
            }
            if let Some(&known) = in_interval.get(y.window()) {
                let _ = known;
                continue;
            }
            let inside = leq(u, &y);
            in_interval.insert(y.window().to_vec(), inside);
            if inside {
                members.push(y.clone());
                stack.push(y);
            }
        }
    }

    members.sort_by(|x, y| (x.length(), x.window()).cmp(&(y.length(), y.window())));
    let index: HashMap<Vec<i8>, u32> = members
        .iter()
        .enumerate()
        .map(|(i, x)| (x.window().to_vec(), i as u32))
        .collect();
    let n = v.length() - base_len;
    let ranks: Vec<u8> = members.iter().map(|x| (x.length() - base_len) as u8).collect();
    let mut up = vec![Vec::new(); members.len()];
    let mut down = vec![Vec::new(); members.len()];
    for (xid, x) in members.iter().enumerate() {
        for y in covers_with(x, &reflections) {
            if let Some(&yid) = index.get(y.window()) {
                down[xid].push(yid);
                up[yid as usize].push(xid as u32);
            }
        }
    }
    for list in up.iter_mut().chain(down.iter_mut()) {
        list.sort_unstable();
    }
    let mut levels = vec![Vec::new(); n + 1];
    for (vid, &r) in ranks.iter().enumerate() {
        levels[r as usize].push(vid as u32);
    }
    Ok(Interval {
        group,
        bottom: u.clone(),
        top: v.clone(),
        vertices: members,
        index,
        ranks,
        up,
        down,
        levels,
    })
}

/// The coatoms of the interval: vertices strictly above the bottom and
/// covered by the top, in window order.
pub fn coatoms(iv: &Interval) -> Vec<Element> {
    let n = iv.length();
    if n < 2 {
        return Vec::new();
    }
    iv.levels[n - 1]
        .iter()
        .map(|&vid| iv.vertices[vid as usize].clone())
        .collect()
}

/// The order-reversed image `[v·w0, u·w0]` of the interval under the
/// antiautomorphism `x -> x·w0`.
pub fn dual(iv: &Interval) -> Interval {
    let group = iv.group;
    let w0 = group.longest_element();
    let n = iv.length();
    let mapped: Vec<Element> = iv.vertices.iter().map(|x| multiply(x, &w0)).collect();
    let mut order: Vec<usize> = (0..mapped.len()).collect();
    // rank reverses: the image of a rank-r vertex has rank n - r
    order.sort_by(|&i, &j| {
        let ri = n - iv.ranks[i] as usize;
        let rj = n - iv.ranks[j] as usize;
        (ri, mapped[i].window()).cmp(&(rj, mapped[j].window()))
    });
    let mut new_id = vec![0u32; mapped.len()];
    for (pos, &old) in order.iter().enumerate() {
        new_id[old] = pos as u32;
    }
    let vertices: Vec<Element> = order.iter().map(|&i| mapped[i].clone()).collect();
    let index: HashMap<Vec<i8>, u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, x)| (x.window().to_vec(), i as u32))
        .collect();
    let ranks: Vec<u8> = order.iter().map(|&i| (n - iv.ranks[i] as usize) as u8).collect();
    let mut up = vec![Vec::new(); vertices.len()];
    let mut down = vec![Vec::new(); vertices.len()];
    for (xid, xs) in iv.up.iter().enumerate() {
        // x < y in the source becomes y' < x' in the dual
        for &yid in xs {
            let xn = new_id[xid];
            let yn = new_id[yid as usize];
            up[yn as usize].push(xn);
            down[xn as usize].push(yn);
        }
    }
    for list in up.iter_mut().chain(down.iter_mut()) {
        list.sort_unstable();
    }
    let mut levels = vec![Vec::new(); n + 1];
    for (vid, &r) in ranks.iter().enumerate() {
        levels[r as usize].push(vid as u32);
    }
    Interval {
        group,
        bottom: multiply(&iv.top, &w0),
        top: multiply(&iv.bottom, &w0),
        vertices,
        index,
        ranks,
        up,
        down,
        levels,
    }
}

/// All directed reflection edges `x -> y = x·t` inside the interval,
/// with the witnessing reflection, ordered by vertex ids.
pub fn bruhat_edges(iv: &Interval) -> Vec<(Element, Element, Reflection)> {
    let reflection_set: HashMap<Vec<i8>, Reflection> = iv
        .group
        .reflections()
        .into_iter()
        .map(|t| (t.element().window().to_vec(), t))
        .collect();
    let mut out = Vec::new();
    for xid in 0..iv.vertices.len() {
        for yid in 0..iv.vertices.len() {
            if iv.ranks[xid] >= iv.ranks[yid] {
                continue;
            }
            let x = &iv.vertices[xid];
            let y = &iv.vertices[yid];
            let t = multiply(&x.inverse(), y);
            if let Some(refl) = reflection_set.get(t.window()) {
                out.push((x.clone(), y.clone(), refl.clone()));
            }
        }
    }
    out
}

/// A saturated descending chain from the top of an interval to its
/// bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    elements: Vec<Element>,
}

impl Chain {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn top(&self) -> &Element {
        &self.elements[0]
    }

    pub fn bottom(&self) -> &Element {
        self.elements.last().unwrap()
    }

    /// Number of covering steps.
    pub fn step_count(&self) -> usize {
        self.elements.len() - 1
    }
}

/// All maximal chains of the interval, each descending from top to
/// bottom through covering relations.
pub fn maximal_chains(iv: &Interval) -> Result<Vec<Chain>, OrderError> {
    let n = iv.length();
    if n > MAX_CHAIN_INTERVAL_LENGTH {
        return Err(OrderError::ChainCapExceeded {
            length: n,
            cap: MAX_CHAIN_INTERVAL_LENGTH,
        });
    }
    let mut chains = Vec::new();
    let mut path = vec![iv.top_vid()];
    descend(iv, &mut path, &mut chains);
    Ok(chains)
}

fn descend(iv: &Interval, path: &mut Vec<u32>, chains: &mut Vec<Chain>) {
    let last = *path.last().unwrap();
    let below = iv.down(last);
    if below.is_empty() {
        chains.push(Chain {
            elements: path
                .iter()
                .map(|&vid| iv.vertices[vid as usize].clone())
                .collect(),
        });
        return;
    }
    for &next in below {
        path.push(next);
        descend(iv, path, chains);
        path.pop();
    }
}

/// The deletion label of a maximal chain relative to a fixed reduced
/// word of its top element.
///
/// Step `k` of the chain deletes one letter of the running word; the
/// label records the deleted letter's position in the original word.
/// Labels are compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChainLabel(pub Vec<usize>);

impl ChainLabel {
    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn is_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for ChainLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Labels a chain by iterated deletion against `v_word`, a reduced word
/// for the chain's top element.
///
/// At each step the deleted position is the unique one whose removal
/// evaluates to the next chain element; ties, which cannot occur for
/// reduced running words, would resolve to the smallest position.
pub fn chain_label(chain: &Chain, v_word: &Word) -> Result<ChainLabel, OrderError> {
    let top = chain.top();
    let group = top.group();
    if v_word.len() != top.length()
        || group.evaluate_word(v_word).map_err(|_| OrderError::WordMismatch)? != *top
    {
        return Err(OrderError::WordMismatch);
    }
    // letters keep their 1-based position in the original word
    let mut current: Vec<(usize, u8)> = v_word
        .letters()
        .iter()
        .enumerate()
        .map(|(i, &l)| (i + 1, l))
        .collect();
    let mut label = Vec::with_capacity(chain.step_count());
    for target in &chain.elements()[1..] {
        if target.length() + 1 != current.len() {
            return Err(OrderError::ChainMismatch);
        }
        let hit = (0..current.len()).find(|&p| {
            let letters: Vec<u8> = current
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != p)
                .map(|(_, &(_, l))| l)
                .collect();
            group.evaluate_word(&Word(letters)).unwrap() == *target
        });
        let Some(p) = hit else {
            return Err(OrderError::ChainMismatch);
        };
        label.push(current[p].0);
        current.remove(p);
    }
    Ok(ChainLabel(label))
}

/// The unique maximal chain whose label is increasing; it is also the
/// lexicographically least chain.
///
/// Found greedily: every prefix of the least chain is least, so at each
/// step the smallest valid deletion position is taken. Panics if
/// `v_word` is not a reduced word for the interval's top.
pub fn increasing_chain(iv: &Interval, v_word: &Word) -> Chain {
    let group = iv.group();
    assert_eq!(
        v_word.len(),
        iv.length() + iv.bottom.length(),
        "word is not reduced for the interval top"
    );
    assert_eq!(
        group.evaluate_word(v_word).expect("valid word"),
        *iv.top(),
        "word does not evaluate to the interval top"
    );
    let mut current: Vec<u8> = v_word.letters().to_vec();
    let mut elements = vec![iv.top().clone()];
    while elements.last().unwrap() != iv.bottom() {
        let len_target = current.len() - 1;
        let mut chosen = None;
        for p in 0..current.len() {
            let letters: Vec<u8> = current
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != p)
                .map(|(_, &l)| l)
                .collect();
            let y = group.evaluate_word(&Word(letters)).unwrap();
            if y.length() == len_target && iv.contains(&y) {
                chosen = Some((p, y));
                break;
            }
        }
        let (p, y) = chosen.expect("interval chains always reach the bottom");
        current.remove(p);
        elements.push(y);
    }
    Chain { elements }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;

    fn a(rank: usize) -> Group {
        Group::new(Family::A, rank).unwrap()
    }

    fn b(rank: usize) -> Group {
        Group::new(Family::B, rank).unwrap()
    }

    /// Subword oracle: u <= v iff some subsequence of a fixed reduced
    /// word of v of length `length(u)` evaluates to u. The fixed word
    /// comes from an independent Cayley-graph BFS.
    fn subword_leq(u: &Element, v: &Element, v_word: &[u8]) -> bool {
        let lu = u.length();
        if lu > v_word.len() {
            return false;
        }
        combinations(v_word.len(), lu).into_iter().any(|idx| {
            let letters: Vec<u8> = idx.iter().map(|&i| v_word[i]).collect();
            u.group().evaluate_word(&Word(letters)).unwrap() == *u
        })
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        if k > n {
            return out;
        }
        loop {
            out.push(idx.clone());
            // advance
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
                if i == 0 {
                    return out;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// BFS words: a shortest word per element, independent of
    /// `reduced_word`.
    fn bfs_words(g: Group) -> std::collections::HashMap<Element, Vec<u8>> {
        use std::collections::{HashMap, VecDeque};
        let mut words: HashMap<Element, Vec<u8>> = HashMap::new();
        let mut queue = VecDeque::new();
        words.insert(g.identity(), Vec::new());
        queue.push_back(g.identity());
        while let Some(x) = queue.pop_front() {
            let wx = words[&x].clone();
            for i in 1..=g.rank() {
                let y = x.right_mul_gen(i);
                if !words.contains_key(&y) {
                    let mut wy = wx.clone();
                    wy.push(i as u8);
                    words.insert(y.clone(), wy);
                    queue.push_back(y);
                }
            }
        }
        words
    }

    #[test]
    fn leq_agrees_with_subword_oracle() {
        for g in [a(3), b(2)] {
            let words = bfs_words(g);
            let elements: Vec<Element> = g.all_elements().unwrap().collect();
            for u in &elements {
                for v in &elements {
                    let expect = subword_leq(u, v, &words[v]);
                    assert_eq!(leq(u, v), expect, "leq({u}, {v})");
                }
            }
        }
    }

    #[test]
    fn identity_below_everything() {
        let g = b(3);
        let e = g.identity();
        for x in g.all_elements().unwrap() {
            assert!(leq(&e, &x));
        }
    }

    #[test]
    fn everything_below_longest() {
        let g = a(3);
        let w0 = g.longest_element();
        for x in g.all_elements().unwrap() {
            assert!(leq(&x, &w0));
        }
    }

    #[test]
    fn covers_examples() {
        let g = a(2);
        assert!(covers(&g.identity()).is_empty());
        let s1 = g.generator(1).unwrap();
        assert_eq!(covers(&s1), vec![g.identity()]);
        let below_w0 = covers(&g.longest_element());
        assert_eq!(below_w0.len(), 2);
        assert!(below_w0.iter().all(|x| x.length() == 2));
    }

    #[test]
    fn interval_basics() {
        let g = a(2);
        let s1 = g.generator(1).unwrap();
        let point = interval(&s1, &s1).unwrap();
        assert_eq!(point.vertex_count(), 1);
        assert_eq!(point.edge_count(), 0);

        let whole = interval(&g.identity(), &g.longest_element()).unwrap();
        assert_eq!(whole.vertex_count(), 6);
        assert_eq!(whole.length(), 3);

        let s2 = g.generator(2).unwrap();
        assert_eq!(
            interval(&s1, &s2).unwrap_err(),
            OrderError::NotComparable
        );
    }

    #[test]
    fn length_two_intervals_are_diamonds_in_a3() {
        let g = a(3);
        let elements: Vec<Element> = g.all_elements().unwrap().collect();
        let mut seen = 0;
        for u in &elements {
            for v in &elements {
                if v.length() != u.length() + 2 || !leq(u, v) {
                    continue;
                }
                let iv = interval(u, v).unwrap();
                assert_eq!(iv.vertex_count(), 4, "{iv:?}");
                assert_eq!(iv.edge_count(), 4, "{iv:?}");
                seen += 1;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn bruhat_edges_examples() {
        let g = a(2);
        let s1 = g.generator(1).unwrap();
        let edge = interval(&g.identity(), &s1).unwrap();
        assert_eq!(bruhat_edges(&edge).len(), 1);

        let whole = interval(&g.identity(), &g.longest_element()).unwrap();
        let edges = bruhat_edges(&whole);
        // brute force: ordered pairs (x, xt) with increasing length
        let reflections = g.reflections();
        let mut expected = 0;
        for x in g.all_elements().unwrap() {
            for t in &reflections {
                let y = multiply(&x, t.element());
                if y.length() > x.length() {
                    expected += 1;
                }
            }
        }
        assert_eq!(edges.len(), expected);
        // every Hasse edge appears among the reflection edges
        for xid in 0..whole.vertex_count() {
            for &yid in whole.up(xid as u32) {
                let x = &whole.vertices()[xid];
                let y = &whole.vertices()[yid as usize];
                assert!(edges
                    .iter()
                    .any(|(ex, ey, _)| ex == x && ey == y));
            }
        }
    }

    #[test]
    fn maximal_chain_counts() {
        let g = a(2);
        let s1 = g.generator(1).unwrap();
        let edge = interval(&g.identity(), &s1).unwrap();
        assert_eq!(maximal_chains(&edge).unwrap().len(), 1);

        let s1s2 = g.evaluate_word(&Word(vec![1, 2])).unwrap();
        let diamond = interval(&g.identity(), &s1s2).unwrap();
        assert_eq!(maximal_chains(&diamond).unwrap().len(), 2);

        // value computed by the Hasse-path enumeration below; the full
        // S_3 order has two middle elements each covering both atoms
        let whole = interval(&g.identity(), &g.longest_element()).unwrap();
        let chains = maximal_chains(&whole).unwrap();
        let mut count = 0;
        let mut stack = vec![vec![whole.top_vid()]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            if whole.down(last).is_empty() {
                count += 1;
                continue;
            }
            for &next in whole.down(last) {
                let mut p = path.clone();
                p.push(next);
                stack.push(p);
            }
        }
        assert_eq!(chains.len(), count);
        assert_eq!(chains.len(), 4);
        for c in &chains {
            assert_eq!(c.step_count(), 3);
        }
    }

    #[test]
    fn coatom_examples() {
        let g = a(2);
        let s1 = g.generator(1).unwrap();
        let edge = interval(&g.identity(), &s1).unwrap();
        assert!(coatoms(&edge).is_empty());

        let s1s2 = g.evaluate_word(&Word(vec![1, 2])).unwrap();
        let diamond = interval(&g.identity(), &s1s2).unwrap();
        assert_eq!(coatoms(&diamond).len(), 2);

        let whole = interval(&g.identity(), &g.longest_element()).unwrap();
        assert_eq!(coatoms(&whole).len(), 2);
    }

    #[test]
    fn dual_examples() {
        let g = a(2);
        let whole = interval(&g.identity(), &g.longest_element()).unwrap();
        let d = dual(&whole);
        let mut vs: Vec<&Element> = whole.vertices().iter().collect();
        let mut dvs: Vec<&Element> = d.vertices().iter().collect();
        vs.sort();
        dvs.sort();
        assert_eq!(vs, dvs);

        // double dual restores every length-3 interval of A_3
        let g = a(3);
        let elements: Vec<Element> = g.all_elements().unwrap().collect();
        for u in &elements {
            for v in &elements {
                if v.length() != u.length() + 3 || !leq(u, v) {
                    continue;
                }
                let iv = interval(u, v).unwrap();
                let dd = dual(&dual(&iv));
                assert_eq!(dd.bottom(), iv.bottom());
                assert_eq!(dd.top(), iv.top());
                assert_eq!(dd.vertices(), iv.vertices());
                assert_eq!(dual(&iv).length(), iv.length());
            }
        }
    }

    #[test]
    fn dual_matches_bfs_materialization() {
        let g = b(2);
        let elements: Vec<Element> = g.all_elements().unwrap().collect();
        for u in &elements {
            for v in &elements {
                if !leq(u, v) {
                    continue;
                }
                let d = dual(&interval(u, v).unwrap());
                let direct = interval(d.bottom(), d.top()).unwrap();
                assert_eq!(d.vertices(), direct.vertices());
                for vid in 0..d.vertex_count() as u32 {
                    assert_eq!(d.up(vid), direct.up(vid));
                }
            }
        }
    }

    #[test]
    fn chain_labels_in_small_intervals() {
        let g = a(3);
        let elements: Vec<Element> = g.all_elements().unwrap().collect();
        for u in &elements {
            for v in &elements {
                if v.length() != u.length() + 2 || !leq(u, v) {
                    continue;
                }
                let iv = interval(u, v).unwrap();
                let word = v.reduced_word();
                let chains = maximal_chains(&iv).unwrap();
                assert_eq!(chains.len(), 2);
                let l0 = chain_label(&chains[0], &word).unwrap();
                let l1 = chain_label(&chains[1], &word).unwrap();
                assert_ne!(l0, l1);
                assert_eq!(
                    [&l0, &l1].iter().filter(|l| l.is_increasing()).count(),
                    1
                );
            }
        }
    }

    #[test]
    fn single_edge_chain_has_one_position() {
        let g = a(2);
        let s1 = g.generator(1).unwrap();
        let edge = interval(&g.identity(), &s1).unwrap();
        let chains = maximal_chains(&edge).unwrap();
        let label = chain_label(&chains[0], &s1.reduced_word()).unwrap();
        assert_eq!(label.positions().len(), 1);
    }

    #[test]
    fn increasing_chain_is_unique_and_least() {
        for (g, max_len) in [(a(3), 4usize), (b(2), 3)] {
            let elements: Vec<Element> = g.all_elements().unwrap().collect();
            for u in &elements {
                for v in &elements {
                    let diff = v.length() as isize - u.length() as isize;
                    if diff < 1 || diff as usize > max_len || !leq(u, v) {
                        continue;
                    }
                    let iv = interval(u, v).unwrap();
                    let word = v.reduced_word();
                    let chains = maximal_chains(&iv).unwrap();
                    let mut labels: Vec<ChainLabel> = chains
                        .iter()
                        .map(|c| chain_label(c, &word).unwrap())
                        .collect();
                    let increasing: Vec<usize> = (0..labels.len())
                        .filter(|&i| labels[i].is_increasing())
                        .collect();
                    assert_eq!(increasing.len(), 1, "{iv:?}");
                    let picked = increasing_chain(&iv, &word);
                    assert_eq!(&picked, &chains[increasing[0]]);
                    let min = labels.iter().min().unwrap().clone();
                    labels.sort();
                    assert_eq!(labels[0], min);
                    assert_eq!(
                        chain_label(&picked, &word).unwrap(),
                        min,
                        "increasing chain must be lexicographically least"
                    );
                }
            }
        }
    }

    #[test]
    fn chain_property_in_a3() {
        let g = a(3);
        let elements: Vec<Element> = g.all_elements().unwrap().collect();
        for u in &elements {
            for v in &elements {
                if u == v || !leq(u, v) {
                    continue;
                }
                let iv = interval(u, v).unwrap();
                // every maximal chain steps down one length at a time
                let word = v.reduced_word();
                let c = increasing_chain(&iv, &word);
                assert_eq!(c.step_count(), iv.length());
                for pair in c.elements().windows(2) {
                    assert_eq!(pair[0].length(), pair[1].length() + 1);
                }
            }
        }
    }

    #[test]
    fn shellability_step_in_a3() {
        use std::collections::BTreeSet;
        let g = a(3);
        let elements: Vec<Element> = g.all_elements().unwrap().collect();
        for u in &elements {
            for v in &elements {
                let diff = v.length() as isize - u.length() as isize;
                if diff < 2 || diff > 4 || !leq(u, v) {
                    continue;
                }
                let iv = interval(u, v).unwrap();
                let word = v.reduced_word();
                let mut labeled: Vec<(ChainLabel, BTreeSet<&Element>)> = Vec::new();
                let chains = maximal_chains(&iv).unwrap();
                for c in &chains {
                    labeled.push((
                        chain_label(c, &word).unwrap(),
                        c.elements().iter().collect(),
                    ));
                }
                labeled.sort_by(|x, y| x.0.cmp(&y.0));
                for mi in 0..labeled.len() {
                    for mpi in 0..mi {
                        let (_, m) = &labeled[mi];
                        let (_, mp) = &labeled[mpi];
                        let inter: BTreeSet<&Element> = m.intersection(mp).copied().collect();
                        let ok = (0..mi).any(|ki| {
                            let (_, k) = &labeled[ki];
                            let km: BTreeSet<&Element> = m.intersection(k).copied().collect();
                            inter.is_subset(&km) && km.len() == m.len() - 1
                        });
                        assert!(ok, "shellability step failed in {iv:?}");
                    }
                }
            }
        }
    }
}
