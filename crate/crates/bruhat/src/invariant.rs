//! The inductive interval invariant and its matcher.
//!
//! An interval of length `n` is summarized relative to a store of
//! already-classified shorter intervals by three pieces of data:
//!
//! - the multiset of classes of its coatom subintervals `[u, c_i]`;
//! - for every rank `n-2` vertex `w` (each is covered by exactly two
//!   coatoms `c_a`, `c_b`), the images of `w` inside the class
//!   representatives of `[u, c_a]` and `[u, c_b]`;
//! - for every such `w`, a "twist": the automorphism of the length
//!   `n-2` representative obtained by carrying `[u, w]` into the
//!   representative through the `a`-side maps and back out through the
//!   `b`-side maps.
//!
//! Two intervals of length `n` are isomorphic exactly when their
//! summaries can be made equal by re-enumerating one side's coatoms and
//! composing its class maps with automorphisms of the representatives.
//! The matcher searches that space; on success it glues the per-coatom
//! maps into an explicit full-interval isomorphism, which is validated
//! structurally before being returned.
//!
//! [`StoreChain`] owns the representative intervals per length together
//! with a fixed classifying map for every interval it has seen.
//! Classification is inductive and on demand: classifying an interval
//! classifies whatever shorter intervals it needs first.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::group::Element;
use crate::iso::{automorphisms, validate_iso, PosetIso};
use crate::order::{interval, Interval, IntervalKey, OrderError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StoreError {
    #[error("interval {0:?} has no classification entry")]
    Unclassified(IntervalKey),
    #[error("coatom index {index} out of range for {count} coatoms")]
    CoatomIndex { index: usize, count: usize },
    #[error("map is not an automorphism of the coatom subinterval")]
    BadAutomorphism,
    #[error("element is not a co-cover shared by the two coatoms")]
    NotSharedCoCover,
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Index of a class representative within its length level.
pub type ClassIdx = usize;

/// A twist: an automorphism of a representative interval, tagged with
/// the class it acts on.
pub type TwistKey = (ClassIdx, Vec<u32>);

/// The classifying map of one interval: its class and the fixed
/// isomorphism onto the class representative.
#[derive(Clone, Debug)]
pub struct PhiEntry {
    pub rep: ClassIdx,
    pub map: PosetIso,
}

/// Outcome of classifying one interval.
#[derive(Clone, Debug)]
pub struct ClassResult {
    pub rep: ClassIdx,
    pub map: PosetIso,
    pub newly_inserted: bool,
}

/// One class representative, kept with the data the matcher needs.
pub struct RepEntry {
    pub interval: Arc<Interval>,
    pub class_multiset: Vec<ClassIdx>,
    side: Option<Arc<Side>>,
    aut: Option<Arc<Vec<PosetIso>>>,
}

#[derive(Default)]
struct Level {
    reps: Vec<RepEntry>,
    phi: HashMap<IntervalKey, PhiEntry>,
}

/// Per-coatom data of one interval relative to a store chain.
struct Side {
    iv: Arc<Interval>,
    coatom_vids: Vec<u32>,
    subs: Vec<Arc<Interval>>,
    classes: Vec<ClassIdx>,
    /// The stored classifying map per coatom: `subs[i]` onto the
    /// representative of `classes[i]`.
    to_rep: Vec<PosetIso>,
    cocovers: Vec<CoCover>,
}

/// A rank `n-2` vertex together with the unique pair of coatoms
/// covering it and its vertex ids inside their subintervals.
struct CoCover {
    vid: u32,
    slots: (u16, u16),
    sub_vids: (u32, u32),
}

/// The invariant of one interval under identity automorphisms and the
/// canonical coatom order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub length: usize,
    /// Coatoms in window order; all other fields index into this.
    pub coatom_order: Vec<Element>,
    /// Class of `[u, c_i]` per coatom.
    pub classes: Vec<ClassIdx>,
    /// Sorted copy of `classes`.
    pub class_multiset: Vec<ClassIdx>,
    /// `(a, b, image of w in rep_a, image of w in rep_b)` per shared
    /// co-cover `w` of coatoms `a < b`.
    pub overlaps: BTreeSet<(u16, u16, u32, u32)>,
    /// `(slot, image of w, twist)` for every co-cover incidence.
    pub twists: BTreeSet<(u16, u32, TwistKey)>,
    quad_list: Vec<(u16, u16, u32, u32)>,
    twist_list: Vec<TwistKey>,
}

/// A successful match: the coatom re-enumeration, the per-coatom
/// automorphisms applied on the target side, and the glued
/// full-interval isomorphism.
#[derive(Clone, Debug)]
pub struct MatchOutcome {
    /// `coatom_assignment[i]` is the target coatom matched to the
    /// candidate's `i`-th coatom (both in window order).
    pub coatom_assignment: Vec<usize>,
    /// Automorphism of the target's matched coatom subinterval, per
    /// candidate coatom.
    pub twists: Vec<PosetIso>,
    pub iso: PosetIso,
}

/// Representative stores for every interval length, plus the fixed
/// classifying maps and a materialization cache.
///
/// All mutation goes through `&mut self`, so matching always runs
/// against the stores as they are at call time.
#[derive(Default)]
pub struct StoreChain {
    levels: Vec<Level>,
    cache: HashMap<IntervalKey, Arc<Interval>>,
    pub matcher_calls: u64,
}

impl StoreChain {
    pub fn new() -> Self {
        StoreChain::default()
    }

    /// Number of length levels present (max touched length + 1).
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn class_count(&self, length: usize) -> usize {
        self.levels.get(length).map_or(0, |l| l.reps.len())
    }

    pub fn reps(&self, length: usize) -> &[RepEntry] {
        self.levels.get(length).map_or(&[], |l| &l.reps)
    }

    pub fn rep_interval(&self, length: usize, class: ClassIdx) -> Arc<Interval> {
        self.levels[length].reps[class].interval.clone()
    }

    pub fn lookup(&self, key: &IntervalKey) -> Option<&PhiEntry> {
        self.levels.iter().find_map(|l| l.phi.get(key))
    }

    /// Classification entry for the interval; errors when it has not
    /// been classified yet.
    pub fn phi_of(&self, key: &IntervalKey) -> Result<&PhiEntry, StoreError> {
        self.lookup(key)
            .ok_or_else(|| StoreError::Unclassified(key.clone()))
    }

    /// Number of classified intervals at one length.
    pub fn phi_count(&self, length: usize) -> usize {
        self.levels.get(length).map_or(0, |l| l.phi.len())
    }

    /// Phi keys at one length, sorted by (group, bottom length, bottom
    /// window, top window) for deterministic persistence.
    pub fn phi_keys(&self, length: usize) -> Vec<IntervalKey> {
        let Some(level) = self.levels.get(length) else {
            return Vec::new();
        };
        let mut keys: Vec<IntervalKey> = level.phi.keys().cloned().collect();
        keys.sort_by(|x, y| {
            let lx = self.cache[x].bottom().length();
            let ly = self.cache[y].bottom().length();
            (x.0, lx, &x.1, &x.2).cmp(&(y.0, ly, &y.1, &y.2))
        });
        keys
    }

    fn level_mut(&mut self, length: usize) -> &mut Level {
        if self.levels.len() <= length {
            self.levels.resize_with(length + 1, Level::default);
        }
        &mut self.levels[length]
    }

    /// Seeds the materialization cache.
    pub fn insert_cached(&mut self, iv: Arc<Interval>) {
        self.cache.entry(iv.key()).or_insert(iv);
    }

    /// Materializes `[u, v]`, reusing the cache.
    pub fn get_interval(&mut self, u: &Element, v: &Element) -> Result<Arc<Interval>, OrderError> {
        let key = (u.group(), u.window().to_vec(), v.window().to_vec());
        if let Some(iv) = self.cache.get(&key) {
            return Ok(iv.clone());
        }
        let iv = Arc::new(interval(u, v)?);
        self.cache.insert(key, iv.clone());
        Ok(iv)
    }

    fn aut_of(&mut self, length: usize, class: ClassIdx) -> Arc<Vec<PosetIso>> {
        if let Some(a) = &self.levels[length].reps[class].aut {
            return a.clone();
        }
        let iv = self.levels[length].reps[class].interval.clone();
        let auts =
            Arc::new(automorphisms(&iv).expect("representatives stay under the automorphism cap"));
        self.levels[length].reps[class].aut = Some(auts.clone());
        auts
    }

    /// Classifies the interval: finds its class representative (or
    /// inserts it as a new one) and fixes the isomorphism onto it.
    pub fn classify(&mut self, iv: &Arc<Interval>) -> Result<ClassResult, StoreError> {
        let key = iv.key();
        self.insert_cached(iv.clone());
        let n = iv.length();
        if let Some(entry) = self.levels.get(n).and_then(|l| l.phi.get(&key)) {
            return Ok(ClassResult {
                rep: entry.rep,
                map: entry.map.clone(),
                newly_inserted: false,
            });
        }
        if n <= 1 {
            let level = self.level_mut(n);
            let newly_inserted = level.reps.is_empty();
            if newly_inserted {
                level.reps.push(RepEntry {
                    interval: iv.clone(),
                    class_multiset: Vec::new(),
                    side: None,
                    aut: None,
                });
            }
            // intervals of length 0 and 1 are chains; vertex order is
            // already the unique isomorphism
            let map = PosetIso::identity(iv.vertex_count());
            level.phi.insert(
                key,
                PhiEntry {
                    rep: 0,
                    map: map.clone(),
                },
            );
            return Ok(ClassResult {
                rep: 0,
                map,
                newly_inserted,
            });
        }

        let side = Arc::new(self.build_side(iv)?);
        let prof = self.profile_from_side(&side)?;
        let rep_count = self.level_mut(n).reps.len();
        for ri in 0..rep_count {
            if self.levels[n].reps[ri].class_multiset != prof.class_multiset {
                continue;
            }
            self.matcher_calls += 1;
            let rep_side = self.levels[n].reps[ri]
                .side
                .clone()
                .expect("representatives of length >= 2 keep their side data");
            if let Some(outcome) = self.match_sides(&side, &prof, &rep_side)? {
                self.level_mut(n).phi.insert(
                    key,
                    PhiEntry {
                        rep: ri,
                        map: outcome.iso.clone(),
                    },
                );
                return Ok(ClassResult {
                    rep: ri,
                    map: outcome.iso,
                    newly_inserted: false,
                });
            }
        }

        #[cfg(debug_assertions)]
        for entry in &self.levels[n].reps {
            debug_assert!(
                crate::iso::find_isomorphism(&entry.interval, iv).is_none(),
                "matcher missed an isomorphism between {:?} and {:?}",
                entry.interval,
                iv
            );
        }

        let map = PosetIso::identity(iv.vertex_count());
        let level = self.level_mut(n);
        let rep = level.reps.len();
        level.reps.push(RepEntry {
            interval: iv.clone(),
            class_multiset: prof.class_multiset.clone(),
            side: Some(side),
            aut: None,
        });
        level.phi.insert(
            key,
            PhiEntry {
                rep,
                map: map.clone(),
            },
        );
        Ok(ClassResult {
            rep,
            map,
            newly_inserted: true,
        })
    }

    /// Builds per-coatom data, classifying the coatom subintervals as
    /// needed.
    fn build_side(&mut self, iv: &Arc<Interval>) -> Result<Side, StoreError> {
        let n = iv.length();
        let coatom_vids: Vec<u32> = if n >= 2 {
            iv.levels()[n - 1].clone()
        } else {
            Vec::new()
        };
        let mut subs = Vec::with_capacity(coatom_vids.len());
        let mut classes = Vec::with_capacity(coatom_vids.len());
        let mut to_rep = Vec::with_capacity(coatom_vids.len());
        for &cvid in &coatom_vids {
            let coatom = iv.vertices()[cvid as usize].clone();
            let sub = self.get_interval(iv.bottom(), &coatom)?;
            let result = self.classify(&sub)?;
            subs.push(sub);
            classes.push(result.rep);
            to_rep.push(result.map);
        }
        let mut cocovers = Vec::new();
        if n >= 2 {
            for &wvid in &iv.levels()[n - 2] {
                let ups = iv.up(wvid);
                assert_eq!(
                    ups.len(),
                    2,
                    "every rank n-2 vertex lies under exactly two coatoms"
                );
                let a = coatom_vids.binary_search(&ups[0]).unwrap() as u16;
                let b = coatom_vids.binary_search(&ups[1]).unwrap() as u16;
                let w = &iv.vertices()[wvid as usize];
                let sub_a = subs[a as usize].index_of(w).unwrap();
                let sub_b = subs[b as usize].index_of(w).unwrap();
                cocovers.push(CoCover {
                    vid: wvid,
                    slots: (a, b),
                    sub_vids: (sub_a, sub_b),
                });
            }
        }
        Ok(Side {
            iv: iv.clone(),
            coatom_vids,
            subs,
            classes,
            to_rep,
            cocovers,
        })
    }

    fn profile_from_side(&mut self, side: &Side) -> Result<Profile, StoreError> {
        let mut quad_list = Vec::with_capacity(side.cocovers.len());
        let mut twist_list = Vec::with_capacity(side.cocovers.len());
        for c in &side.cocovers {
            let (a, b) = (c.slots.0 as usize, c.slots.1 as usize);
            let xa = side.to_rep[a].apply(c.sub_vids.0);
            let xb = side.to_rep[b].apply(c.sub_vids.1);
            quad_list.push((c.slots.0, c.slots.1, xa, xb));
            let twist = self.twist_between(
                TwistSide {
                    sub: &side.subs[a],
                    theta: &side.to_rep[a],
                    class: side.classes[a],
                    sub_vid: c.sub_vids.0,
                },
                TwistSide {
                    sub: &side.subs[b],
                    theta: &side.to_rep[b],
                    class: side.classes[b],
                    sub_vid: c.sub_vids.1,
                },
            )?;
            twist_list.push(twist);
        }
        let mut class_multiset = side.classes.clone();
        class_multiset.sort_unstable();
        let overlaps: BTreeSet<_> = quad_list.iter().copied().collect();
        let mut twists = BTreeSet::new();
        for (c, key) in side.cocovers.iter().zip(&twist_list) {
            let (a, b) = (c.slots.0 as usize, c.slots.1 as usize);
            twists.insert((c.slots.0, side.to_rep[a].apply(c.sub_vids.0), key.clone()));
            twists.insert((c.slots.1, side.to_rep[b].apply(c.sub_vids.1), key.clone()));
        }
        Ok(Profile {
            length: side.iv.length(),
            coatom_order: side
                .coatom_vids
                .iter()
                .map(|&vid| side.iv.vertices()[vid as usize].clone())
                .collect(),
            classes: side.classes.clone(),
            class_multiset,
            overlaps,
            twists,
            quad_list,
            twist_list,
        })
    }

    /// The twist at a shared co-cover: carry the length `n-2`
    /// representative back through the `b`-side maps into the interval
    /// and forward through the `a`-side maps.
    ///
    /// Reading the composition right to left:
    /// `phi_a' . theta_a . theta_b^-1 . phi_b'^-1`, where `phi_a'`
    /// classifies the image interval `[bottom, theta_a(w)]` inside the
    /// `a`-side representative. Both image intervals share one class,
    /// so the composite is an automorphism of that class
    /// representative.
    fn twist_between(&mut self, a: TwistSide, b: TwistSide) -> Result<TwistKey, StoreError> {
        let n1 = a.sub.length();
        let rep_a = self.rep_interval(n1, a.class);
        let rep_b = self.rep_interval(n1, b.class);
        let xa = a.theta.apply(a.sub_vid);
        let xb = b.theta.apply(b.sub_vid);
        let ia = self.get_interval(rep_a.bottom(), &rep_a.vertices()[xa as usize])?;
        let ib = self.get_interval(rep_b.bottom(), &rep_b.vertices()[xb as usize])?;
        let ca = self.classify(&ia)?;
        let cb = self.classify(&ib)?;
        debug_assert_eq!(ca.rep, cb.rep, "images of one co-cover share a class");
        let target_count = self.rep_interval(ia.length(), ca.rep).vertex_count();

        let inv_cb = cb.map.inverse();
        let inv_theta_b = b.theta.inverse();
        let mut perm = Vec::with_capacity(target_count);
        for z in 0..target_count as u32 {
            let ib_vid = inv_cb.apply(z);
            let el_b = &ib.vertices()[ib_vid as usize];
            let rep_b_vid = rep_b.index_of(el_b).unwrap();
            let sub_b_vid = inv_theta_b.apply(rep_b_vid);
            let shared = &b.sub.vertices()[sub_b_vid as usize];
            let sub_a_vid = a.sub.index_of(shared).unwrap();
            let rep_a_vid = a.theta.apply(sub_a_vid);
            let ia_vid = ia.index_of(&rep_a.vertices()[rep_a_vid as usize]).unwrap();
            perm.push(ca.map.apply(ia_vid));
        }
        Ok((ca.rep, perm))
    }

    /// Searches for a coatom re-enumeration and per-coatom twists on
    /// the target side making the two summaries equal, then glues and
    /// validates the full isomorphism.
    fn match_sides(
        &mut self,
        cand: &Side,
        cand_profile: &Profile,
        target: &Side,
    ) -> Result<Option<MatchOutcome>, StoreError> {
        let m = cand.coatom_vids.len();
        if target.coatom_vids.len() != m {
            return Ok(None);
        }

        // candidate co-covers grouped by their larger slot, so each is
        // checked as soon as both sides of its pair are assigned
        let mut groups_by_max: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (ci, c) in cand.cocovers.iter().enumerate() {
            groups_by_max[c.slots.1 as usize].push(ci);
        }
        let mut cand_pair_count: HashMap<(u16, u16), usize> = HashMap::new();
        for c in &cand.cocovers {
            *cand_pair_count.entry(c.slots).or_default() += 1;
        }
        let mut target_by_pair: HashMap<(u16, u16), Vec<usize>> = HashMap::new();
        for (ci, c) in target.cocovers.iter().enumerate() {
            target_by_pair.entry(c.slots).or_default().push(ci);
        }

        let ctx = MatchCtx {
            cand,
            cand_profile,
            target,
            groups_by_max,
            cand_pair_count,
            target_by_pair,
        };
        let mut state = MatchState {
            sigma: vec![usize::MAX; m],
            thetas: vec![None; m],
            used: vec![false; m],
        };
        if !self.assign_slot(0, &ctx, &mut state)? {
            return Ok(None);
        }
        let sigma = state.sigma.clone();
        let thetas: Vec<PosetIso> = state.thetas.iter().map(|t| t.clone().unwrap()).collect();
        let Some(iso) = self.glue(cand, target, &sigma, &thetas) else {
            debug_assert!(false, "matched summaries must glue to an isomorphism");
            return Ok(None);
        };
        // report the target-side automorphisms in subinterval form
        let twists = (0..m)
            .map(|i| thetas[i].then(&target.to_rep[sigma[i]].inverse()))
            .collect();
        Ok(Some(MatchOutcome {
            coatom_assignment: sigma,
            twists,
            iso,
        }))
    }

    fn assign_slot(
        &mut self,
        i: usize,
        ctx: &MatchCtx<'_>,
        state: &mut MatchState,
    ) -> Result<bool, StoreError> {
        let m = ctx.cand.coatom_vids.len();
        if i == m {
            return Ok(true);
        }
        let class = ctx.cand.classes[i];
        for j in 0..m {
            if state.used[j] || ctx.target.classes[j] != class {
                continue;
            }
            let auts = self.aut_of(ctx.cand.subs[i].length(), class);
            for alpha in auts.iter() {
                let theta = ctx.target.to_rep[j].then(alpha);
                state.sigma[i] = j;
                state.thetas[i] = Some(theta);
                state.used[j] = true;
                let consistent = self.check_closed_pairs(i, ctx, state)?;
                if consistent && self.assign_slot(i + 1, ctx, state)? {
                    return Ok(true);
                }
                state.sigma[i] = usize::MAX;
                state.thetas[i] = None;
                state.used[j] = false;
            }
        }
        Ok(false)
    }

    /// Checks every candidate co-cover whose pair closed at slot `i`: a
    /// target co-cover with the matching images and an equal twist must
    /// exist, and pair multiplicities must agree.
    fn check_closed_pairs(
        &mut self,
        i: usize,
        ctx: &MatchCtx<'_>,
        state: &mut MatchState,
    ) -> Result<bool, StoreError> {
        let mut seen_pairs: Vec<(u16, u16)> = Vec::new();
        for &ci in &ctx.groups_by_max[i] {
            let c = &ctx.cand.cocovers[ci];
            let (a, b) = (c.slots.0 as usize, c.slots.1 as usize);
            let (ja, jb) = (state.sigma[a], state.sigma[b]);
            let pair = (ja.min(jb) as u16, ja.max(jb) as u16);
            let Some(targets) = ctx.target_by_pair.get(&pair) else {
                return Ok(false);
            };
            if !seen_pairs.contains(&c.slots) {
                seen_pairs.push(c.slots);
                if targets.len() != ctx.cand_pair_count[&c.slots] {
                    return Ok(false);
                }
            }
            let (_, _, xa, xb) = ctx.cand_profile.quad_list[ci];
            let theta_a = state.thetas[a].as_ref().unwrap().clone();
            let theta_b = state.thetas[b].as_ref().unwrap().clone();
            // orient each target co-cover so its vertex ids line up
            // with the candidate's (a, b) slots
            let mut matched = None;
            for &ti in targets {
                let t = &ctx.target.cocovers[ti];
                let (va, vb) = if t.slots.0 as usize == ja {
                    (t.sub_vids.0, t.sub_vids.1)
                } else {
                    (t.sub_vids.1, t.sub_vids.0)
                };
                if theta_a.apply(va) == xa && theta_b.apply(vb) == xb {
                    matched = Some((va, vb));
                    break;
                }
            }
            let Some((va, vb)) = matched else {
                return Ok(false);
            };
            let twist = self.twist_between(
                TwistSide {
                    sub: &ctx.target.subs[ja],
                    theta: &theta_a,
                    class: ctx.cand.classes[a],
                    sub_vid: va,
                },
                TwistSide {
                    sub: &ctx.target.subs[jb],
                    theta: &theta_b,
                    class: ctx.cand.classes[b],
                    sub_vid: vb,
                },
            )?;
            if twist != ctx.cand_profile.twist_list[ci] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Glues the per-coatom maps into a full-interval isomorphism and
    /// validates it.
    fn glue(
        &mut self,
        cand: &Side,
        target: &Side,
        sigma: &[usize],
        thetas: &[PosetIso],
    ) -> Option<PosetIso> {
        let nv = cand.iv.vertex_count();
        if nv != target.iv.vertex_count() {
            return None;
        }
        let mut map = vec![u32::MAX; nv];
        map[cand.iv.top_vid() as usize] = target.iv.top_vid();
        for (i, (&j, theta)) in sigma.iter().zip(thetas).enumerate() {
            let theta_inv = theta.inverse();
            let sub_c = &cand.subs[i];
            let sub_t = &target.subs[j];
            for svid in 0..sub_c.vertex_count() as u32 {
                let cvid = cand.iv.index_of(&sub_c.vertices()[svid as usize]).unwrap();
                let rep_vid = cand.to_rep[i].apply(svid);
                let t_sub_vid = theta_inv.apply(rep_vid);
                let tvid = target
                    .iv
                    .index_of(&sub_t.vertices()[t_sub_vid as usize])
                    .unwrap();
                let slot = &mut map[cvid as usize];
                if *slot != u32::MAX && *slot != tvid {
                    return None;
                }
                *slot = tvid;
            }
        }
        if map.iter().any(|&v| v == u32::MAX) {
            return None;
        }
        let iso = PosetIso::from_map(map)?;
        if !validate_iso(&cand.iv, &target.iv, &iso) {
            return None;
        }
        Some(iso)
    }
}

struct MatchCtx<'a> {
    cand: &'a Side,
    cand_profile: &'a Profile,
    target: &'a Side,
    groups_by_max: Vec<Vec<usize>>,
    cand_pair_count: HashMap<(u16, u16), usize>,
    target_by_pair: HashMap<(u16, u16), Vec<usize>>,
}

struct MatchState {
    sigma: Vec<usize>,
    thetas: Vec<Option<PosetIso>>,
    used: Vec<bool>,
}

struct TwistSide<'a> {
    sub: &'a Arc<Interval>,
    theta: &'a PosetIso,
    class: ClassIdx,
    sub_vid: u32,
}

/// Sorted multiset of classes of the coatom subintervals. Read-only:
/// errors if any coatom subinterval is unclassified.
pub fn coatom_classes(chain: &StoreChain, iv: &Interval) -> Result<Vec<ClassIdx>, StoreError> {
    let mut out = Vec::new();
    for coatom in crate::order::coatoms(iv) {
        let key = (
            iv.group(),
            iv.bottom().window().to_vec(),
            coatom.window().to_vec(),
        );
        out.push(chain.phi_of(&key)?.rep);
    }
    out.sort_unstable();
    Ok(out)
}

/// The stored classifying map of the `coatom`-th subinterval composed
/// with a chosen automorphism `psi` of it (`psi` applies first).
pub fn rep_map(
    chain: &mut StoreChain,
    iv: &Arc<Interval>,
    coatom: usize,
    psi: &PosetIso,
) -> Result<PosetIso, StoreError> {
    let side = chain.build_side(iv)?;
    if coatom >= side.subs.len() {
        return Err(StoreError::CoatomIndex {
            index: coatom,
            count: side.subs.len(),
        });
    }
    let sub = &side.subs[coatom];
    if psi.len() != sub.vertex_count() || !validate_iso(sub, sub, psi) {
        return Err(StoreError::BadAutomorphism);
    }
    Ok(psi.then(&side.to_rep[coatom]))
}

fn thetas_with(
    chain: &mut StoreChain,
    iv: &Arc<Interval>,
    psis: &[PosetIso],
) -> Result<(Side, Vec<PosetIso>), StoreError> {
    let side = chain.build_side(iv)?;
    if psis.len() != side.subs.len() {
        return Err(StoreError::CoatomIndex {
            index: psis.len(),
            count: side.subs.len(),
        });
    }
    let mut thetas = Vec::with_capacity(psis.len());
    for (i, psi) in psis.iter().enumerate() {
        let sub = &side.subs[i];
        if psi.len() != sub.vertex_count() || !validate_iso(sub, sub, psi) {
            return Err(StoreError::BadAutomorphism);
        }
        thetas.push(psi.then(&side.to_rep[i]));
    }
    Ok((side, thetas))
}

/// The overlap set under the chosen per-coatom automorphisms: one
/// quadruple per shared co-cover.
pub fn overlap_set(
    chain: &mut StoreChain,
    iv: &Arc<Interval>,
    psis: &[PosetIso],
) -> Result<BTreeSet<(u16, u16, u32, u32)>, StoreError> {
    let (side, thetas) = thetas_with(chain, iv, psis)?;
    Ok(side
        .cocovers
        .iter()
        .map(|c| {
            let xa = thetas[c.slots.0 as usize].apply(c.sub_vids.0);
            let xb = thetas[c.slots.1 as usize].apply(c.sub_vids.1);
            (c.slots.0, c.slots.1, xa, xb)
        })
        .collect())
}

/// The twist at one shared co-cover `w` of coatoms `i` and `j`, as an
/// automorphism of the representative of `[u, w]`'s class.
pub fn twist(
    chain: &mut StoreChain,
    iv: &Arc<Interval>,
    w: &Element,
    i: usize,
    j: usize,
    psis: &[PosetIso],
) -> Result<PosetIso, StoreError> {
    let (side, thetas) = thetas_with(chain, iv, psis)?;
    let (a, b) = (i.min(j) as u16, i.max(j) as u16);
    let Some(c) = side
        .cocovers
        .iter()
        .find(|c| c.slots == (a, b) && side.iv.vertices()[c.vid as usize] == *w)
    else {
        return Err(StoreError::NotSharedCoCover);
    };
    let key = chain.twist_between(
        TwistSide {
            sub: &side.subs[c.slots.0 as usize],
            theta: &thetas[c.slots.0 as usize],
            class: side.classes[c.slots.0 as usize],
            sub_vid: c.sub_vids.0,
        },
        TwistSide {
            sub: &side.subs[c.slots.1 as usize],
            theta: &thetas[c.slots.1 as usize],
            class: side.classes[c.slots.1 as usize],
            sub_vid: c.sub_vids.1,
        },
    )?;
    Ok(PosetIso::from_map(key.1).expect("twists are bijections"))
}

/// The twist entries under the chosen automorphisms: one triple per
/// co-cover incidence (each co-cover contributes through both of its
/// covering coatoms).
pub fn twist_set(
    chain: &mut StoreChain,
    iv: &Arc<Interval>,
    psis: &[PosetIso],
) -> Result<BTreeSet<(u16, u32, TwistKey)>, StoreError> {
    let (side, thetas) = thetas_with(chain, iv, psis)?;
    let mut out = BTreeSet::new();
    for c in &side.cocovers {
        let key = chain.twist_between(
            TwistSide {
                sub: &side.subs[c.slots.0 as usize],
                theta: &thetas[c.slots.0 as usize],
                class: side.classes[c.slots.0 as usize],
                sub_vid: c.sub_vids.0,
            },
            TwistSide {
                sub: &side.subs[c.slots.1 as usize],
                theta: &thetas[c.slots.1 as usize],
                class: side.classes[c.slots.1 as usize],
                sub_vid: c.sub_vids.1,
            },
        )?;
        out.insert((
            c.slots.0,
            thetas[c.slots.0 as usize].apply(c.sub_vids.0),
            key.clone(),
        ));
        out.insert((
            c.slots.1,
            thetas[c.slots.1 as usize].apply(c.sub_vids.1),
            key,
        ));
    }
    Ok(out)
}

/// The full invariant of the interval under identity automorphisms and
/// the canonical coatom order, classifying subintervals on demand.
pub fn profile(chain: &mut StoreChain, iv: &Arc<Interval>) -> Result<Profile, StoreError> {
    let side = chain.build_side(iv)?;
    chain.profile_from_side(&side)
}

/// Decides whether `cand` and `target` are isomorphic by matching their
/// invariants; on success returns the re-enumeration, the automorphisms
/// used, and the glued vertex bijection.
pub fn match_interval(
    chain: &mut StoreChain,
    cand: &Arc<Interval>,
    target: &Arc<Interval>,
) -> Result<Option<MatchOutcome>, StoreError> {
    if cand.length() != target.length() {
        return Ok(None);
    }
    let n = cand.length();
    if n <= 1 {
        if cand.vertex_count() != target.vertex_count() {
            return Ok(None);
        }
        // chains of equal length: the vertex order is the isomorphism
        return Ok(Some(MatchOutcome {
            coatom_assignment: Vec::new(),
            twists: Vec::new(),
            iso: PosetIso::identity(cand.vertex_count()),
        }));
    }
    let cand_side = chain.build_side(cand)?;
    let cand_profile = chain.profile_from_side(&cand_side)?;
    let target_side = chain.build_side(target)?;
    let mut target_multiset = target_side.classes.clone();
    target_multiset.sort_unstable();
    if target_multiset != cand_profile.class_multiset {
        return Ok(None);
    }
    chain.matcher_calls += 1;
    chain.match_sides(&cand_side, &cand_profile, &target_side)
}
