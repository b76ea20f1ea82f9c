//! Abstract poset services for materialized intervals: isomorphism
//! search, automorphism enumeration, and complete canonical
//! certificates.
//!
//! All searches work on the combinatorial data of an [`Interval`]
//! (ranks and cover lists); the ambient group plays no role here.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::order::Interval;

/// Automorphism enumeration refuses intervals longer than this.
pub const MAX_AUTOMORPHISM_LENGTH: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("interval length {length} exceeds automorphism cap {cap}")]
    AutCapExceeded { length: usize, cap: usize },
}

/// A vertex bijection between two intervals (or one interval and
/// itself), indexed by canonical vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetIso {
    map: Vec<u32>,
}

impl fmt::Debug for PosetIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PosetIso{:?}", self.map)
    }
}

impl PosetIso {
    pub fn identity(n: usize) -> Self {
        PosetIso {
            map: (0..n as u32).collect(),
        }
    }

    pub fn from_map(map: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if v as usize >= map.len() || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(PosetIso { map })
    }

    pub(crate) fn from_map_unchecked(map: Vec<u32>) -> Self {
        PosetIso { map }
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, vid: u32) -> u32 {
        self.map[vid as usize]
    }

    pub fn inverse(&self) -> PosetIso {
        let mut map = vec![0u32; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v as usize] = i as u32;
        }
        PosetIso { map }
    }

    /// Composition `g(self(x))`: this map first, then `g`.
    pub fn then(&self, g: &PosetIso) -> PosetIso {
        PosetIso {
            map: self.map.iter().map(|&v| g.map[v as usize]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }
}

/// Checks that `iso` is a rank-preserving order isomorphism from `src`
/// onto `dst` fixing bottom and top.
pub fn validate_iso(src: &Interval, dst: &Interval, iso: &PosetIso) -> bool {
    if src.vertex_count() != dst.vertex_count()
        || iso.len() != src.vertex_count()
        || src.edge_count() != dst.edge_count()
    {
        return false;
    }
    let mut seen = vec![false; iso.len()];
    for (vid, &img) in iso.map().iter().enumerate() {
        if seen[img as usize] {
            return false;
        }
        seen[img as usize] = true;
        if src.rank_of(vid as u32) != dst.rank_of(img) {
            return false;
        }
    }
    // a bijection with equal edge counts that preserves covers forward
    // preserves them backward too
    for vid in 0..src.vertex_count() as u32 {
        for &up in src.up(vid) {
            let a = iso.apply(vid);
            let b = iso.apply(up);
            if !dst.up(a).contains(&b) {
                return false;
            }
        }
    }
    true
}

/// View of one or two intervals as a single leveled digraph for joint
/// color refinement, so color ids are comparable across the graphs.
struct JointView<'a> {
    graphs: Vec<&'a Interval>,
    offsets: Vec<usize>,
    total: usize,
}

impl<'a> JointView<'a> {
    fn new(graphs: Vec<&'a Interval>) -> Self {
        let mut offsets = Vec::with_capacity(graphs.len());
        let mut total = 0;
        for g in &graphs {
            offsets.push(total);
            total += g.vertex_count();
        }
        JointView {
            graphs,
            offsets,
            total,
        }
    }

    fn locate(&self, v: usize) -> (usize, u32) {
        for (gi, &off) in self.offsets.iter().enumerate().rev() {
            if v >= off {
                return (gi, (v - off) as u32);
            }
        }
        unreachable!()
    }

    fn rank(&self, v: usize) -> usize {
        let (gi, vid) = self.locate(v);
        self.graphs[gi].rank_of(vid)
    }

    fn neighbors(&self, v: usize, upward: bool) -> impl Iterator<Item = usize> + '_ {
        let (gi, vid) = self.locate(v);
        let off = self.offsets[gi];
        let list = if upward {
            self.graphs[gi].up(vid)
        } else {
            self.graphs[gi].down(vid)
        };
        list.iter().map(move |&w| off + w as usize)
    }
}

/// Initial colors from (rank, up-degree, down-degree), then iterated
/// refinement by sorted neighbor-color multisets. New ids follow the
/// sorted signature order, so they depend only on the structure.
fn refined_colors(view: &JointView<'_>) -> Vec<u32> {
    let mut colors: Vec<u32> = {
        let sigs: Vec<(usize, usize, usize)> = (0..view.total)
            .map(|v| {
                (
                    view.rank(v),
                    view.neighbors(v, true).count(),
                    view.neighbors(v, false).count(),
                )
            })
            .collect();
        assign_ids(&sigs)
    };
    loop {
        let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..view.total)
            .map(|v| {
                let mut up: Vec<u32> = view.neighbors(v, true).map(|w| colors[w]).collect();
                let mut down: Vec<u32> = view.neighbors(v, false).map(|w| colors[w]).collect();
                up.sort_unstable();
                down.sort_unstable();
                (colors[v], up, down)
            })
            .collect();
        let next = assign_ids(&sigs);
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

fn assign_ids<T: Ord>(sigs: &[T]) -> Vec<u32> {
    let mut sorted: Vec<&T> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(&s).unwrap() as u32)
        .collect()
}

/// Refinement restricted to a single interval, for the canonical form.
fn refine_single(iv: &Interval, colors: &mut Vec<u32>) {
    loop {
        let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..iv.vertex_count())
            .map(|v| {
                let mut up: Vec<u32> = iv
                    .up(v as u32)
                    .iter()
                    .map(|&w| colors[w as usize])
                    .collect();
                let mut down: Vec<u32> = iv
                    .down(v as u32)
                    .iter()
                    .map(|&w| colors[w as usize])
                    .collect();
                up.sort_unstable();
                down.sort_unstable();
                (colors[v], up, down)
            })
            .collect();
        let next = assign_ids(&sigs);
        if next == *colors {
            return;
        }
        *colors = next;
    }
}

fn search_isos(p: &Interval, q: &Interval, find_all: bool) -> Vec<PosetIso> {
    if p.vertex_count() != q.vertex_count()
        || p.length() != q.length()
        || p.edge_count() != q.edge_count()
    {
        return Vec::new();
    }
    for r in 0..=p.length() {
        if p.levels()[r].len() != q.levels()[r].len() {
            return Vec::new();
        }
    }
    let n = p.vertex_count();
    let view = JointView::new(vec![p, q]);
    let colors = refined_colors(&view);
    let (pc, qc) = colors.split_at(n);

    let mut p_hist: Vec<u32> = pc.to_vec();
    let mut q_hist: Vec<u32> = qc.to_vec();
    p_hist.sort_unstable();
    q_hist.sort_unstable();
    if p_hist != q_hist {
        return Vec::new();
    }

    // process p's vertices in color order; initial colors sort by rank
    // first, so down-neighbors are always mapped before their covers
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&v| (pc[v as usize], v));
    let mut by_color: HashMap<u32, Vec<u32>> = HashMap::new();
    for v in 0..n as u32 {
        by_color.entry(qc[v as usize]).or_default().push(v);
    }

    let mut out = Vec::new();
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    backtrack(
        p, q, &order, pc, &by_color, 0, &mut map, &mut used, find_all, &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    p: &Interval,
    q: &Interval,
    order: &[u32],
    pc: &[u32],
    by_color: &HashMap<u32, Vec<u32>>,
    pos: usize,
    map: &mut Vec<u32>,
    used: &mut Vec<bool>,
    find_all: bool,
    out: &mut Vec<PosetIso>,
) -> bool {
    if pos == order.len() {
        out.push(PosetIso {
            map: map.clone(),
        });
        return !find_all;
    }
    let v = order[pos];
    let Some(candidates) = by_color.get(&pc[v as usize]) else {
        return false;
    };
    'cand: for &w in candidates {
        if used[w as usize] {
            continue;
        }
        // all down-neighbors of v are already mapped; their images must
        // be exactly down-neighbors of w (degrees agree via colors)
        for &d in p.down(v) {
            let img = map[d as usize];
            if !q.down(w).contains(&img) {
                continue 'cand;
            }
        }
        map[v as usize] = w;
        used[w as usize] = true;
        let stop = backtrack(p, q, order, pc, by_color, pos + 1, map, used, find_all, out);
        map[v as usize] = u32::MAX;
        used[w as usize] = false;
        if stop {
            return true;
        }
    }
    false
}

/// Some rank-preserving isomorphism from `p` onto `q`, if one exists.
pub fn find_isomorphism(p: &Interval, q: &Interval) -> Option<PosetIso> {
    search_isos(p, q, false).into_iter().next()
}

/// The full automorphism group of the interval as explicit maps; the
/// identity is always included.
pub fn automorphisms(p: &Interval) -> Result<Vec<PosetIso>, IsoError> {
    if p.length() > MAX_AUTOMORPHISM_LENGTH {
        return Err(IsoError::AutCapExceeded {
            length: p.length(),
            cap: MAX_AUTOMORPHISM_LENGTH,
        });
    }
    let mut auts = search_isos(p, p, true);
    auts.sort();
    Ok(auts)
}

/// A canonical byte string: two intervals have equal certificates if
/// and only if they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{:02x}", b)).collect()
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({})", self.hex())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hex())
    }
}

/// Complete canonical certificate by refinement with backtracking
/// individualization: the first non-singleton color class is split on
/// every member and the lexicographically smallest encoding wins.
pub fn certificate(p: &Interval) -> Certificate {
    let view = JointView::new(vec![p]);
    let colors = refined_colors(&view);
    Certificate(canonical_bytes(p, colors))
}

fn canonical_bytes(iv: &Interval, colors: Vec<u32>) -> Vec<u8> {
    let n = iv.vertex_count();
    let mut class_of: HashMap<u32, Vec<u32>> = HashMap::new();
    for v in 0..n as u32 {
        class_of.entry(colors[v as usize]).or_default().push(v);
    }
    let target = class_of
        .iter()
        .filter(|(_, vs)| vs.len() > 1)
        .min_by_key(|(c, _)| **c);
    let Some((_, members)) = target else {
        return encode(iv, &colors);
    };
    let mut best: Option<Vec<u8>> = None;
    for &v in members {
        // split v below the rest of its class, keeping all other order
        let mut child: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
        child[v as usize] -= 1;
        let mut child = normalize(child);
        refine_single(iv, &mut child);
        let bytes = canonical_bytes(iv, child);
        if best.as_ref().is_none_or(|b| bytes < *b) {
            best = Some(bytes);
        }
    }
    best.unwrap()
}

fn normalize(colors: Vec<u32>) -> Vec<u32> {
    assign_ids(&colors)
}

fn encode(iv: &Interval, colors: &[u32]) -> Vec<u8> {
    let n = iv.vertex_count();
    // discrete coloring: position = color
    let mut pos = vec![0u16; n];
    for v in 0..n {
        pos[v] = colors[v] as u16;
    }
    let mut bytes = Vec::with_capacity(2 + n + 2 + 4 * iv.edge_count());
    bytes.extend_from_slice(&(n as u16).to_be_bytes());
    let mut ranks = vec![0u8; n];
    for v in 0..n {
        ranks[pos[v] as usize] = iv.rank_of(v as u32) as u8;
    }
    bytes.extend_from_slice(&ranks);
    let mut edges: Vec<(u16, u16)> = Vec::with_capacity(iv.edge_count());
    for v in 0..n as u32 {
        for &w in iv.up(v) {
            edges.push((pos[v as usize], pos[w as usize]));
        }
    }
    edges.sort_unstable();
    bytes.extend_from_slice(&(edges.len() as u16).to_be_bytes());
    for (a, b) in edges {
        bytes.extend_from_slice(&a.to_be_bytes());
        bytes.extend_from_slice(&b.to_be_bytes());
    }
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Element, Family, Group, Word};
    use crate::order::{interval, leq};

    fn a(rank: usize) -> Group {
        Group::new(Family::A, rank).unwrap()
    }

    fn b(rank: usize) -> Group {
        Group::new(Family::B, rank).unwrap()
    }

    fn intervals_of_length(g: Group, k: usize) -> Vec<Interval> {
        let elements: Vec<Element> = g.all_elements().unwrap().collect();
        let mut out = Vec::new();
        for u in &elements {
            for v in &elements {
                if v.length() == u.length() + k && leq(u, v) {
                    out.push(interval(u, v).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn identity_iso_on_self() {
        let g = a(2);
        let iv = interval(&g.identity(), &g.longest_element()).unwrap();
        let iso = find_isomorphism(&iv, &iv).unwrap();
        assert!(validate_iso(&iv, &iv, &iso));
    }

    #[test]
    fn diamonds_from_different_families_are_isomorphic() {
        let ga = a(3);
        let gb = b(2);
        let pa = interval(
            &ga.identity(),
            &ga.evaluate_word(&Word(vec![1, 2])).unwrap(),
        )
        .unwrap();
        let pb = interval(
            &gb.identity(),
            &gb.evaluate_word(&Word(vec![1, 2])).unwrap(),
        )
        .unwrap();
        let iso = find_isomorphism(&pa, &pb).expect("diamonds are isomorphic");
        assert!(validate_iso(&pa, &pb, &iso));
        assert_eq!(certificate(&pa), certificate(&pb));
    }

    #[test]
    fn automorphism_counts() {
        let g = a(2);
        let s1 = g.generator(1).unwrap();
        let point = interval(&s1, &s1).unwrap();
        assert_eq!(automorphisms(&point).unwrap().len(), 1);

        let diamond = interval(
            &g.identity(),
            &g.evaluate_word(&Word(vec![1, 2])).unwrap(),
        )
        .unwrap();
        let auts = automorphisms(&diamond).unwrap();
        assert_eq!(auts.len(), 2);
        assert!(auts.iter().any(PosetIso::is_identity));
    }

    #[test]
    fn automorphisms_form_a_group() {
        let g = a(3);
        for k in 1..=4 {
            for iv in intervals_of_length(g, k) {
                let auts = automorphisms(&iv).unwrap();
                assert!(auts.iter().any(PosetIso::is_identity));
                for x in &auts {
                    assert!(validate_iso(&iv, &iv, x));
                    assert!(auts.contains(&x.inverse()));
                    for y in &auts {
                        assert!(auts.contains(&x.then(y)));
                    }
                }
            }
        }
    }

    #[test]
    fn iso_is_symmetric_and_composes() {
        let g = a(3);
        let ivs = intervals_of_length(g, 3);
        for p in &ivs {
            for q in &ivs {
                let pq = find_isomorphism(p, q);
                let qp = find_isomorphism(q, p);
                assert_eq!(pq.is_some(), qp.is_some());
                if let (Some(f), Some(_)) = (&pq, &qp) {
                    for r in ivs.iter().take(8) {
                        if let Some(h) = find_isomorphism(q, r) {
                            assert!(validate_iso(p, r, &f.then(&h)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn certificates_complete_against_oracle() {
        // exhaustive at A_3 length 3 and B_3 length 4
        for (g, k) in [(a(3), 3usize), (b(3), 4)] {
            let ivs = intervals_of_length(g, k);
            let certs: Vec<Certificate> = ivs.iter().map(certificate).collect();
            for i in 0..ivs.len() {
                for j in i + 1..ivs.len() {
                    let same_cert = certs[i] == certs[j];
                    let iso = find_isomorphism(&ivs[i], &ivs[j]).is_some();
                    assert_eq!(same_cert, iso, "{:?} vs {:?}", ivs[i], ivs[j]);
                }
            }
        }
    }

    #[test]
    fn certificates_sampled_in_a4() {
        // deterministic sample of pairs of length <= 4 intervals in A_4
        let g = a(4);
        let mut ivs = Vec::new();
        for k in 2..=4 {
            ivs.extend(intervals_of_length(g, k));
        }
        let certs: Vec<Certificate> = ivs.iter().map(certificate).collect();
        let mut checked = 0;
        let mut state = 0x9e3779b97f4a7c15u64;
        while checked < 500 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (state >> 33) as usize % ivs.len();
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % ivs.len();
            if i == j || ivs[i].length() != ivs[j].length() {
                continue;
            }
            let same_cert = certs[i] == certs[j];
            let iso = find_isomorphism(&ivs[i], &ivs[j]).is_some();
            assert_eq!(same_cert, iso);
            checked += 1;
        }
    }

    #[test]
    fn certificate_hex_is_lowercase() {
        let g = a(2);
        let iv = interval(&g.identity(), &g.longest_element()).unwrap();
        let hex = certificate(&iv).hex();
        assert!(hex.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
    }
}
