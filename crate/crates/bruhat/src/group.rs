//! Weyl groups of types A and B realized as permutation groups.
//!
//! Elements are stored in one-line "window" notation: the images of
//! `1..=m` where `m` is `rank + 1` in type A and `rank` in type B. A
//! signed permutation satisfies `w(-i) = -w(i)`, so the window over the
//! positive points determines it.
//!
//! Generator conventions:
//! - type A: `s_i` is the adjacent transposition of `i` and `i + 1`;
//! - type B: `s_1` flips the sign of the first coordinate and `s_i`
//!   (`i >= 2`) is the adjacent transposition of coordinates `i - 1`, `i`.
//!
//! Products compose right-to-left: `multiply(a, b)` applies `b` first.
//! Right multiplication by a generator therefore acts on window
//! positions, left multiplication on window values.

use std::fmt;
use std::ops::Mul;
use thiserror::Error;

/// Groups whose order exceeds this refuse full enumeration.
pub const MAX_ENUMERATION_ORDER: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("rank {rank} is not valid for family {family}")]
    InvalidRank { family: Family, rank: usize },
    #[error("generator index {index} out of range 1..={rank}")]
    GeneratorIndex { index: usize, rank: usize },
    #[error("word letter {letter} out of range 1..={rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("group order {order} exceeds enumeration cap {cap}")]
    EnumerationCap { order: u128, cap: u128 },
    #[error("window {0:?} is not a valid one-line form for {1}")]
    InvalidWindow(Vec<i8>, Group),
}

/// Which infinite family the group belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
        }
    }
}

/// A Weyl group identified by family and rank (number of generators).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group {
    family: Family,
    rank: u8,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Which side an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Group {
    /// Ranks are capped so windows fit in `i8` and orders in `u128`.
    const MAX_RANK: usize = 20;

    pub fn new(family: Family, rank: usize) -> Result<Self, GroupError> {
        let min = match family {
            Family::A => 1,
            Family::B => 2,
        };
        if rank < min || rank > Self::MAX_RANK {
            return Err(GroupError::InvalidRank { family, rank });
        }
        Ok(Group {
            family,
            rank: rank as u8,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    /// Size of the one-line window.
    pub fn window_size(&self) -> usize {
        match self.family {
            Family::A => self.rank() + 1,
            Family::B => self.rank(),
        }
    }

    pub fn order(&self) -> u128 {
        let factorial = |n: usize| -> u128 { (1..=n as u128).product() };
        match self.family {
            Family::A => factorial(self.rank() + 1),
            Family::B => (1u128 << self.rank()) * factorial(self.rank()),
        }
    }

    pub fn identity(&self) -> Element {
        let window = (1..=self.window_size() as i8).collect();
        Element {
            group: *self,
            window,
        }
    }

    pub fn generator(&self, index: usize) -> Result<Element, GroupError> {
        if index == 0 || index > self.rank() {
            return Err(GroupError::GeneratorIndex {
                index,
                rank: self.rank(),
            });
        }
        Ok(self.generator_unchecked(index))
    }

    pub(crate) fn generator_unchecked(&self, index: usize) -> Element {
        self.identity().right_mul_gen(index)
    }

    pub fn generators(&self) -> Vec<Element> {
        (1..=self.rank())
            .map(|i| self.generator_unchecked(i))
            .collect()
    }

    /// The unique maximal-length element.
    pub fn longest_element(&self) -> Element {
        let window = match self.family {
            Family::A => (1..=self.window_size() as i8).rev().collect(),
            Family::B => (1..=self.rank() as i8).map(|i| -i).collect(),
        };
        Element {
            group: *self,
            window,
        }
    }

    /// All reflections (conjugates of generators), sorted by window.
    ///
    /// Type A has one reflection per transposition; type B adds sign
    /// flips and sign-crossing transpositions, `rank^2` in total.
    pub fn reflections(&self) -> Vec<Reflection> {
        let m = self.window_size();
        let id: Vec<i8> = (1..=m as i8).collect();
        let mut windows: Vec<Vec<i8>> = Vec::new();
        match self.family {
            Family::A => {
                for i in 0..m {
                    for j in i + 1..m {
                        let mut w = id.clone();
                        w.swap(i, j);
                        windows.push(w);
                    }
                }
            }
            Family::B => {
                for i in 0..m {
                    let mut w = id.clone();
                    w[i] = -w[i];
                    windows.push(w);
                }
                for i in 0..m {
                    for j in i + 1..m {
                        let mut w = id.clone();
                        w.swap(i, j);
                        windows.push(w.clone());
                        w[i] = -w[i];
                        w[j] = -w[j];
                        windows.push(w);
                    }
                }
            }
        }
        windows.sort();
        windows
            .into_iter()
            .map(|window| {
                Reflection(Element {
                    group: *self,
                    window,
                })
            })
            .collect()
    }

    /// Every element exactly once, in lexicographic window order.
    pub fn all_elements(&self) -> Result<std::vec::IntoIter<Element>, GroupError> {
        let order = self.order();
        if order > MAX_ENUMERATION_ORDER {
            return Err(GroupError::EnumerationCap {
                order,
                cap: MAX_ENUMERATION_ORDER,
            });
        }
        let m = self.window_size();
        let mut windows: Vec<Vec<i8>> = Vec::with_capacity(order as usize);
        let mut perm: Vec<i8> = (1..=m as i8).collect();
        loop {
            match self.family {
                Family::A => windows.push(perm.clone()),
                Family::B => {
                    for mask in 0u32..(1 << m) {
                        let w = perm
                            .iter()
                            .enumerate()
                            .map(|(i, &v)| if mask & (1 << i) != 0 { -v } else { v })
                            .collect();
                        windows.push(w);
                    }
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        windows.sort();
        let elements: Vec<Element> = windows
            .into_iter()
            .map(|window| Element {
                group: *self,
                window,
            })
            .collect();
        Ok(elements.into_iter())
    }

    /// Elements bucketed by length; index `k` holds the length-`k` ones.
    pub fn elements_by_length(&self) -> Result<Vec<Vec<Element>>, GroupError> {
        let max_len = self.longest_element().length();
        let mut buckets = vec![Vec::new(); max_len + 1];
        for x in self.all_elements()? {
            buckets[x.length()].push(x);
        }
        Ok(buckets)
    }

    /// Left-to-right product of the word's generators.
    pub fn evaluate_word(&self, word: &Word) -> Result<Element, GroupError> {
        let mut x = self.identity();
        for &letter in word.letters() {
            let letter = letter as usize;
            if letter == 0 || letter > self.rank() {
                return Err(GroupError::LetterOutOfRange {
                    letter,
                    rank: self.rank(),
                });
            }
            x = x.right_mul_gen(letter);
        }
        Ok(x)
    }
}

/// Lexicographic next permutation in place; false when wrapped.
fn next_permutation(p: &mut [i8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A group element in one-line window notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    group: Group,
    window: Vec<i8>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

impl Element {
    /// Validates that `window` is a one-line form for `group`.
    pub fn new(group: Group, window: Vec<i8>) -> Result<Self, GroupError> {
        let m = group.window_size();
        let invalid = || GroupError::InvalidWindow(window.clone(), group);
        if window.len() != m {
            return Err(invalid());
        }
        let mut seen = vec![false; m];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > m || seen[a - 1] {
                return Err(invalid());
            }
            if group.family() == Family::A && v < 0 {
                return Err(invalid());
            }
            seen[a - 1] = true;
        }
        Ok(Element { group, window })
    }

    pub(crate) fn from_window_unchecked(group: Group, window: Vec<i8>) -> Self {
        Element { group, window }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn window(&self) -> &[i8] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as i8 + 1)
    }

    /// Image of the (possibly negative) point `v`.
    fn image(&self, v: i8) -> i8 {
        if v > 0 {
            self.window[(v - 1) as usize]
        } else {
            -self.window[(-v - 1) as usize]
        }
    }

    /// Coxeter length, computed from the window statistic: inversions
    /// for type A, inversions plus the sum of negated values for type B.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut inv = 0usize;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        match self.group.family() {
            Family::A => inv,
            Family::B => {
                let neg: usize = w.iter().filter(|&&v| v < 0).map(|&v| (-v) as usize).sum();
                inv + neg
            }
        }
    }

    pub fn inverse(&self) -> Element {
        let m = self.window.len();
        let mut window = vec![0i8; m];
        for (i, &v) in self.window.iter().enumerate() {
            if v > 0 {
                window[(v - 1) as usize] = i as i8 + 1;
            } else {
                window[(-v - 1) as usize] = -(i as i8 + 1);
            }
        }
        Element {
            group: self.group,
            window,
        }
    }

    /// Multiply by `s_i` on the right (acts on positions).
    pub(crate) fn right_mul_gen(&self, i: usize) -> Element {
        let mut window = self.window.clone();
        match self.group.family() {
            Family::A => window.swap(i - 1, i),
            Family::B => {
                if i == 1 {
                    window[0] = -window[0];
                } else {
                    window.swap(i - 2, i - 1);
                }
            }
        }
        Element {
            group: self.group,
            window,
        }
    }

    /// Multiply by `s_i` on the left (acts on values).
    pub(crate) fn left_mul_gen(&self, i: usize) -> Element {
        let mut window = self.window.clone();
        match self.group.family() {
            Family::A => {
                let (a, b) = (i as i8, i as i8 + 1);
                for v in window.iter_mut() {
                    if *v == a {
                        *v = b;
                    } else if *v == b {
                        *v = a;
                    }
                }
            }
            Family::B => {
                if i == 1 {
                    for v in window.iter_mut() {
                        if *v == 1 {
                            *v = -1;
                        } else if *v == -1 {
                            *v = 1;
                        }
                    }
                } else {
                    let (a, b) = (i as i8 - 1, i as i8);
                    for v in window.iter_mut() {
                        if *v == a {
                            *v = b;
                        } else if *v == b {
                            *v = a;
                        } else if *v == -a {
                            *v = -b;
                        } else if *v == -b {
                            *v = -a;
                        }
                    }
                }
            }
        }
        Element {
            group: self.group,
            window,
        }
    }

    pub(crate) fn has_right_descent(&self, i: usize) -> bool {
        let w = &self.window;
        match self.group.family() {
            Family::A => w[i - 1] > w[i],
            Family::B => {
                if i == 1 {
                    w[0] < 0
                } else {
                    w[i - 2] > w[i - 1]
                }
            }
        }
    }

    pub(crate) fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().has_right_descent(i)
    }

    /// Generator indices that shorten the element on the given side.
    pub fn descents(&self, side: Side) -> Vec<usize> {
        let x;
        let w = match side {
            Side::Right => self,
            Side::Left => {
                x = self.inverse();
                &x
            }
        };
        (1..=self.group.rank())
            .filter(|&i| w.has_right_descent(i))
            .collect()
    }

    /// A reduced word, produced deterministically by repeatedly
    /// stripping the smallest right descent.
    pub fn reduced_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.length());
        let mut x = self.clone();
        loop {
            let Some(i) = (1..=self.group.rank()).find(|&i| x.has_right_descent(i)) else {
                break;
            };
            letters.push(i as u8);
            x = x.right_mul_gen(i);
        }
        letters.reverse();
        Word(letters)
    }
}

/// Group product; `b` is applied first. Panics if the groups differ.
pub fn multiply(a: &Element, b: &Element) -> Element {
    assert_eq!(a.group, b.group, "elements from different groups");
    let window = b.window.iter().map(|&v| a.image(v)).collect();
    Element {
        group: a.group,
        window,
    }
}

impl Mul for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        multiply(self, rhs)
    }
}

/// A word in the generators, stored as 1-based indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for &l in &self.0 {
            write!(f, "s_{}", l)?;
        }
        Ok(())
    }
}

/// An element that is a conjugate of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reflection(Element);

impl Reflection {
    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet, VecDeque};

    fn a(rank: usize) -> Group {
        Group::new(Family::A, rank).unwrap()
    }

    fn b(rank: usize) -> Group {
        Group::new(Family::B, rank).unwrap()
    }

    /// Independent length oracle: BFS distances in the Cayley graph,
    /// multiplying by generators on the right.
    fn cayley_lengths(g: Group) -> HashMap<Element, usize> {
        let gens = g.generators();
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(g.identity(), 0);
        queue.push_back(g.identity());
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            for s in &gens {
                let y = multiply(&x, s);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    #[test]
    fn identity_windows() {
        assert_eq!(a(3).identity().window(), &[1, 2, 3, 4]);
        assert_eq!(b(2).identity().window(), &[1, 2]);
        assert_eq!(a(5).identity().length(), 0);
    }

    #[test]
    fn generator_windows() {
        assert_eq!(a(3).generator(1).unwrap().window(), &[2, 1, 3, 4]);
        assert_eq!(b(2).generator(1).unwrap().window(), &[-1, 2]);
        assert!(a(3).generator(4).is_err());
        assert!(a(3).generator(0).is_err());
    }

    #[test]
    fn generators_are_involutions() {
        for g in [a(3), b(3)] {
            for s in g.generators() {
                assert!(multiply(&s, &s).is_identity());
            }
        }
    }

    #[test]
    fn braid_relations() {
        let g = a(2);
        let s1 = g.generator(1).unwrap();
        let s2 = g.generator(2).unwrap();
        assert_eq!(
            multiply(&multiply(&s1, &s2), &s1),
            multiply(&multiply(&s2, &s1), &s2)
        );

        // m(s1, s2) = 4 in type B
        let g = b(2);
        let s1 = g.generator(1).unwrap();
        let s2 = g.generator(2).unwrap();
        let mut x = g.identity();
        for _ in 0..4 {
            x = multiply(&x, &multiply(&s1, &s2));
        }
        assert!(x.is_identity());
    }

    #[test]
    fn group_orders_by_enumeration() {
        assert_eq!(a(2).all_elements().unwrap().count(), 6);
        assert_eq!(a(3).all_elements().unwrap().count(), 24);
        assert_eq!(b(2).all_elements().unwrap().count(), 8);
        assert_eq!(b(3).all_elements().unwrap().count(), 48);
        assert_eq!(a(6).all_elements().unwrap().count(), 5040);
    }

    #[test]
    fn all_elements_sorted_distinct() {
        for g in [a(3), b(3)] {
            let v: Vec<Element> = g.all_elements().unwrap().collect();
            let set: HashSet<&Element> = v.iter().collect();
            assert_eq!(set.len(), v.len());
            let mut sorted = v.clone();
            sorted.sort();
            assert_eq!(sorted, v);
        }
    }

    #[test]
    fn enumeration_cap() {
        let g = Group::new(Family::A, 12).unwrap();
        assert!(matches!(
            g.all_elements(),
            Err(GroupError::EnumerationCap { .. })
        ));
    }

    #[test]
    fn length_matches_cayley_bfs() {
        for g in [a(3), b(2), b(3)] {
            let oracle = cayley_lengths(g);
            assert_eq!(oracle.len() as u128, g.order());
            for (x, d) in &oracle {
                assert_eq!(x.length(), *d, "length mismatch at {x}");
            }
        }
        // frozen values computed by the BFS oracle
        let w0 = Element::new(a(2), vec![3, 2, 1]).unwrap();
        assert_eq!(w0.length(), 3);
        assert_eq!(b(2).longest_element().length(), 4);
    }

    #[test]
    fn longest_element_is_maximum() {
        for g in [a(2), a(3), b(2), b(3)] {
            let w0 = g.longest_element();
            let max = g.all_elements().unwrap().map(|x| x.length()).max().unwrap();
            assert_eq!(w0.length(), max);
            let count = g
                .all_elements()
                .unwrap()
                .filter(|x| x.length() == max)
                .count();
            assert_eq!(count, 1);
        }
        assert_eq!(a(2).longest_element().window(), &[3, 2, 1]);
        let w0 = a(4).longest_element();
        assert!(multiply(&w0, &w0).is_identity());
        assert_eq!(a(4).longest_element().length(), 4 * 5 / 2);
        assert_eq!(b(4).longest_element().length(), 16);
    }

    #[test]
    fn reduced_word_round_trip() {
        assert!(a(3).identity().reduced_word().is_empty());
        let w0 = Element::new(a(2), vec![3, 2, 1]).unwrap();
        let word = w0.reduced_word();
        assert_eq!(word.len(), 3);
        assert_eq!(a(2).evaluate_word(&word).unwrap(), w0);

        for g in [a(3), a(4), b(2), b(3)] {
            for x in g.all_elements().unwrap() {
                let word = x.reduced_word();
                assert_eq!(word.len(), x.length());
                assert_eq!(g.evaluate_word(&word).unwrap(), x);
            }
        }
    }

    #[test]
    fn evaluate_word_examples() {
        assert!(a(2).evaluate_word(&Word(vec![])).unwrap().is_identity());
        let x = a(2).evaluate_word(&Word(vec![1, 2, 1])).unwrap();
        assert_eq!(x.window(), &[3, 2, 1]);
        assert!(matches!(
            a(2).evaluate_word(&Word(vec![1, 3])),
            Err(GroupError::LetterOutOfRange { .. })
        ));
    }

    #[test]
    fn inverse_exhaustive() {
        for g in [a(3), b(2)] {
            for x in g.all_elements().unwrap() {
                assert!(multiply(&x, &x.inverse()).is_identity());
                assert_eq!(x.inverse().length(), x.length());
            }
        }
    }

    /// Conjugation-closure oracle for the reflection set.
    fn conjugate_closure(g: Group) -> HashSet<Element> {
        let mut set = HashSet::new();
        for w in g.all_elements().unwrap() {
            let wi = w.inverse();
            for s in g.generators() {
                set.insert(multiply(&multiply(&w, &s), &wi));
            }
        }
        set
    }

    #[test]
    fn reflection_sets() {
        assert_eq!(a(2).reflections().len(), 3);
        assert_eq!(a(3).reflections().len(), 6);
        assert_eq!(b(2).reflections().len(), 4);
        assert_eq!(b(3).reflections().len(), 9);
        for g in [a(2), a(3), b(2), b(3)] {
            let direct: HashSet<Element> = g
                .reflections()
                .into_iter()
                .map(Reflection::into_element)
                .collect();
            assert_eq!(direct, conjugate_closure(g));
            for t in &direct {
                assert!(multiply(t, t).is_identity());
            }
        }
    }

    #[test]
    fn descent_examples() {
        assert!(a(3).identity().descents(Side::Left).is_empty());
        assert!(a(3).identity().descents(Side::Right).is_empty());
        let w0 = Element::new(a(2), vec![3, 2, 1]).unwrap();
        assert_eq!(w0.descents(Side::Left), vec![1, 2]);
        assert_eq!(w0.descents(Side::Right), vec![1, 2]);
        let s1 = a(3).generator(1).unwrap();
        assert_eq!(s1.descents(Side::Left), vec![1]);
    }

    #[test]
    fn descents_match_length_definition() {
        for g in [a(3), b(3)] {
            for x in g.all_elements().unwrap() {
                let lx = x.length();
                let left: Vec<usize> = (1..=g.rank())
                    .filter(|&i| x.left_mul_gen(i).length() < lx)
                    .collect();
                let right: Vec<usize> = (1..=g.rank())
                    .filter(|&i| x.right_mul_gen(i).length() < lx)
                    .collect();
                assert_eq!(x.descents(Side::Left), left);
                assert_eq!(x.descents(Side::Right), right);
            }
        }
    }

    #[test]
    fn left_right_mul_consistency() {
        for g in [a(3), b(3)] {
            for x in g.all_elements().unwrap() {
                for i in 1..=g.rank() {
                    let s = g.generator(i).unwrap();
                    assert_eq!(x.right_mul_gen(i), multiply(&x, &s));
                    assert_eq!(x.left_mul_gen(i), multiply(&s, &x));
                }
            }
        }
    }

    #[test]
    fn strong_exchange_on_a3() {
        let g = a(3);
        for x in g.all_elements().unwrap() {
            if x.is_identity() {
                continue;
            }
            let word = x.reduced_word();
            for t in g.reflections() {
                let tx = multiply(t.element(), &x);
                if tx.length() >= x.length() {
                    continue;
                }
                let hit = (0..word.len()).any(|i| {
                    let mut letters = word.0.clone();
                    letters.remove(i);
                    g.evaluate_word(&Word(letters)).unwrap() == tx
                });
                assert!(hit, "strong exchange failed for {x} and {:?}", t.element());
            }
        }
    }

    #[test]
    fn deletion_property_on_a3() {
        let g = a(3);
        let mut words = vec![Vec::new()];
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &words {
                for l in 1..=3u8 {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            words.extend(next.clone());
            words = words.into_iter().filter(|w| w.len() <= 6).collect();
            words.sort();
            words.dedup();
        }
        for letters in words {
            let x = g.evaluate_word(&Word(letters.clone())).unwrap();
            if x.length() == letters.len() {
                continue;
            }
            let mut found = false;
            'outer: for i in 0..letters.len() {
                for j in i + 1..letters.len() {
                    let mut l2 = letters.clone();
                    l2.remove(j);
                    l2.remove(i);
                    if g.evaluate_word(&Word(l2)).unwrap() == x {
                        found = true;
                        break 'outer;
                    }
                }
            }
            assert!(found, "deletion property failed for {:?}", letters);
        }
    }
}
