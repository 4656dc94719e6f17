//! Electroids, legal transitions, `s`-swaps and partition necklaces.

use std::fmt;

use crate::affine::{affine_of_matching, grassmann_necklace, matching_leq, GrassmannNecklace};
use crate::combinat::{
    catalan_subset, dominance_leq, dual, lex_cmp_from, matching_of_partition, partition_of_subset, rank_from, undual,
    CatalanSubset, Matching, NCPartition,
};
use crate::error::{invalid, Error, Result};
use crate::network::nc_index;

/// A boundary label: `ā` or `ã`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Bar(usize),
    Tilde(usize),
}

impl Label {
    pub fn position(self) -> usize {
        match self {
            Label::Bar(a) => 2 * a - 1,
            Label::Tilde(a) => 2 * a,
        }
    }

    pub fn of_position(s: usize) -> Label {
        if s % 2 == 1 {
            Label::Bar(s.div_ceil(2))
        } else {
            Label::Tilde(s / 2)
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Bar(a) => write!(f, "{a}"),
            Label::Tilde(a) => write!(f, "{a}~"),
        }
    }
}

/// `t_{āb̄}(σ)` or `t_{āb̃}(σ)`.
pub fn legal_transition(sigma: &NCPartition, a: usize, target: Label) -> Result<NCPartition> {
    let n = sigma.n();
    let m = 2 * n;
    let (Label::Bar(b) | Label::Tilde(b)) = target;
    if !(1..=n).contains(&a) || !(1..=n).contains(&b) {
        return Err(invalid(format!("labels {a}, {target} outside 1..={n}")));
    }
    let start = 2 * a - 1;
    let r = |x: usize| rank_from(x, start, m);
    let bar_pos = |part: &[usize]| part.iter().map(|&x| 2 * x - 1).collect::<Vec<_>>();
    let part_i = sigma.part_of(a).to_vec();
    let top = bar_pos(&part_i).into_iter().max_by_key(|&x| r(x)).unwrap();
    let illegal = || invalid(format!("({a}, {target}) is not a legal transition of {sigma}"));
    let bpos = target.position();
    let inside = |positions: &[usize]| positions.iter().all(|&x| r(x) > 0 && r(x) < r(top));
    let is_max = |positions: &[usize]| positions.iter().all(|&x| r(x) <= r(bpos));
    let part_j = match target {
        Label::Bar(_) => {
            if sigma.same_part(a, b) {
                return if bpos == top { Ok(sigma.clone()) } else { Err(illegal()) };
            }
            let pj = sigma.part_of(b).to_vec();
            let pos = bar_pos(&pj);
            if part_i.len() < 2 || !inside(&pos) || !is_max(&pos) {
                return Err(illegal());
            }
            Some(pj)
        }
        Label::Tilde(_) => {
            let pos: Vec<usize> = dual(sigma).part_of(b).iter().map(|&x| 2 * x).collect();
            if !inside(&pos) || !is_max(&pos) {
                return Err(illegal());
            }
            None
        }
    };
    let split = |part: &[usize]| -> (Vec<usize>, Vec<usize>) { part.iter().partition(|&&x| r(2 * x - 1) < r(bpos)) };
    let (a0, b0) = split(&part_i);
    let mut parts = Vec::new();
    let mut seps = Vec::new();
    for part in sigma.parts() {
        if *part == part_i || Some(part) == part_j.as_ref() {
            continue;
        }
        let (x, y) = split(part);
        if x.is_empty() || y.is_empty() {
            parts.push(part.clone());
        } else {
            seps.push((x, y));
        }
    }
    seps.sort_by_key(|(x, _)| x.iter().map(|&v| r(2 * v - 1)).min());
    parts.push(a0);
    let mut carry = b0;
    for (x, y) in seps {
        let mut joined = x;
        joined.extend(carry);
        parts.push(joined);
        carry = y;
    }
    if let Some(mut pj) = part_j {
        pj.extend(carry);
        parts.push(pj);
    } else {
        parts.push(carry);
    }
    NCPartition::new(n, parts).map_err(|e| Error::Inconsistent(format!("transition produced a crossing partition: {e}")))
}

/// A transition out of `ā` or, through the dual partition, out of `ã`.
pub fn transition(sigma: &NCPartition, from: Label, to: Label) -> Result<NCPartition> {
    let n = sigma.n();
    match from {
        Label::Bar(a) => legal_transition(sigma, a, to),
        Label::Tilde(a) => {
            // in the dual picture tildes play the bars and b̄ sits at tilde b-1
            let to = match to {
                Label::Tilde(b) => Label::Bar(b),
                Label::Bar(b) => Label::Tilde(if b == 1 { n } else { b - 1 }),
            };
            Ok(undual(&legal_transition(&dual(sigma), a, to)?))
        }
    }
}

/// All `σ'` with `σ →_s σ'`.
pub fn s_swaps(sigma: &NCPartition, s: usize) -> Result<Vec<NCPartition>> {
    let n = sigma.n();
    if s == 0 || s > 2 * n {
        return Err(invalid(format!("position {s} outside 1..={}", 2 * n)));
    }
    let from = Label::of_position(s);
    let (Label::Bar(a) | Label::Tilde(a)) = from;
    let lonely = match from {
        Label::Bar(_) => sigma.is_singleton(a),
        Label::Tilde(_) => dual(sigma).is_singleton(a),
    };
    if lonely {
        return Ok(vec![sigma.clone()]);
    }
    let mut out: Vec<NCPartition> = Vec::new();
    for b in 1..=n {
        for to in [Label::Bar(b), Label::Tilde(b)] {
            if let Ok(next) = transition(sigma, from, to) {
                if !out.contains(&next) {
                    out.push(next);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Electroid {
    pub n: usize,
    /// Members in the canonical enumeration order of `NC_n`.
    pub members: Vec<NCPartition>,
}

impl Electroid {
    pub fn contains(&self, sigma: &NCPartition) -> bool {
        self.members.contains(sigma)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &Electroid) -> bool {
        self.members.iter().all(|s| other.contains(s))
    }

    /// Canonical strings, sorted.
    pub fn strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.members.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }
}

/// `𝓔(τ) = {σ : τ(σ) ≤ τ}`.
pub fn electroid(tau: &Matching) -> Electroid {
    let n = tau.n();
    let members = nc_index(n)
        .list
        .iter()
        .filter(|s| matching_leq(&matching_of_partition(s), tau).expect("same size"))
        .cloned()
        .collect();
    Electroid { n, members }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionNecklace {
    pub n: usize,
    /// `σ^(1), ..., σ^(2n)`.
    pub entries: Vec<NCPartition>,
}

impl PartitionNecklace {
    pub fn get(&self, s: usize) -> &NCPartition {
        &self.entries[(s - 1) % self.entries.len()]
    }

    /// `(I_1(σ^(1)), ..., I_{2n}(σ^(2n)))`.
    pub fn catalan_necklace(&self) -> Vec<Vec<usize>> {
        (1..=2 * self.n).map(|s| catalan_subset(self.get(s), s).elements).collect()
    }

    /// Whether every step `σ^(s) → σ^(s+1)` is an `s`-swap.
    pub fn is_valid(&self) -> bool {
        (1..=2 * self.n).all(|s| s_swaps(self.get(s), s).is_ok_and(|v| v.contains(self.get(s + 1))))
    }
}

/// `Σ(𝓘)` for a Catalan necklace.
pub fn partition_necklace(neck: &GrassmannNecklace) -> Result<PartitionNecklace> {
    let m = neck.subsets.len();
    if m == 0 || m % 2 != 0 {
        return Err(invalid("necklace length must be even and positive"));
    }
    let n = m / 2;
    let entries = (1..=m)
        .map(|s| partition_of_subset(&CatalanSubset { base: s, elements: neck.get(s).to_vec() }, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(PartitionNecklace { n, entries })
}

/// `Σ(τ) = Σ(𝓘(f_τ))`.
pub fn partition_necklace_of(tau: &Matching) -> PartitionNecklace {
    partition_necklace(&grassmann_necklace(&affine_of_matching(tau).1)).expect("electrical necklaces are Catalan")
}

/// `Σ(τ)` built directly from the electroid: `σ^(s)` has the `≤_s`-lexicographically least `I_s`.
pub fn partition_necklace_by_minima(tau: &Matching) -> PartitionNecklace {
    let n = tau.n();
    let m = 2 * n;
    let e = electroid(tau);
    let entries = (1..=m)
        .map(|s| {
            e.members
                .iter()
                .min_by(|x, y| lex_cmp_from(&catalan_subset(x, s).elements, &catalan_subset(y, s).elements, s, m))
                .expect("electroids are nonempty")
                .clone()
        })
        .collect();
    PartitionNecklace { n, entries }
}

/// `{σ : σ ≥_s σ^(s)(τ) for all s}`.
pub fn oh_electroid(tau: &Matching) -> Electroid {
    let n = tau.n();
    let m = 2 * n;
    let neck = partition_necklace_of(tau).catalan_necklace();
    let members = nc_index(n)
        .list
        .iter()
        .filter(|sigma| (1..=m).all(|s| dominance_leq(&neck[s - 1], &catalan_subset(sigma, s).elements, s, m).unwrap()))
        .cloned()
        .collect();
    Electroid { n, members }
}

/// `Σ(τ) ≥ Σ(τ')` entrywise in shifted dominance.
pub fn necklace_geq(big: &PartitionNecklace, small: &PartitionNecklace) -> bool {
    let m = 2 * big.n;
    let (a, b) = (big.catalan_necklace(), small.catalan_necklace());
    (1..=m).all(|s| dominance_leq(&b[s - 1], &a[s - 1], s, m).unwrap())
}

/// The three extra conditions satisfied by necklaces of the form `Σ(τ)`; returns the
/// first violated one as an error. The dual family (`σ^(ã)` in place of `σ^(ā)`) is not
/// checked.
pub fn check_extra_conditions(neck: &PartitionNecklace) -> Result<()> {
    let n = neck.n;
    let m = 2 * n;
    let subsets = neck.catalan_necklace();
    let prev = |a: usize| if a == 1 { n } else { a - 1 };
    let cyc = |a: usize| (a - 1) % n + 1;
    let holds = |s: usize, from: Label, to: Label| transition(neck.get(s), from, to).is_ok_and(|t| t == *neck.get(s + 1));
    for a in 1..=n {
        let s = 2 * a - 1;
        let fail = |k: usize| Err(Error::Inconsistent(format!("extra necklace condition ({k}) fails at {a}")));
        if neck.get(s).is_singleton(a) {
            if !holds(s + 1, Label::Tilde(a), Label::Tilde(prev(a))) {
                return fail(1);
            }
            continue;
        }
        let before = &subsets[s - 1];
        let after = &subsets[s % m];
        let Some(&added) = after.iter().find(|x| !before.contains(x)) else {
            return fail(2);
        };
        match Label::of_position(added) {
            Label::Bar(b) => {
                if !holds(2 * b, Label::Tilde(b), Label::Tilde(prev(a))) {
                    return fail(2);
                }
            }
            Label::Tilde(b) => {
                if !holds(2 * b + 1, Label::Bar(cyc(b + 1)), Label::Tilde(prev(a))) {
                    return fail(3);
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{all_matchings, enumerate_nc};
    use crate::medial::network_of_matching;
    use crate::rat::q;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> NCPartition {
        NCPartition::parse(s).unwrap()
    }

    fn m(s: &str) -> Matching {
        Matching::parse(s).unwrap()
    }

    #[test]
    fn cut_and_shift_examples() {
        let sigma = p("1 8|2 6 7|3 5|4|9");
        assert_eq!(legal_transition(&sigma, 1, Label::Bar(4)).unwrap(), p("1|2 8|3 6 7|4 5|9"));
        assert_eq!(legal_transition(&sigma, 1, Label::Tilde(4)).unwrap(), p("1|2 8|3 6 7|4|5|9"));
        assert_eq!(legal_transition(&sigma, 1, Label::Bar(8)).unwrap(), sigma);
        assert!(legal_transition(&sigma, 1, Label::Bar(9)).is_err());
        assert!(legal_transition(&sigma, 1, Label::Bar(3)).is_err());
        assert!(legal_transition(&sigma, 4, Label::Bar(5)).is_err());
    }

    #[test]
    fn transitions_update_catalan_subsets() {
        for n in 1..=5 {
            for sigma in enumerate_nc(n).unwrap() {
                for a in (1..=n).filter(|&a| !sigma.is_singleton(a)) {
                    let base = catalan_subset(&sigma, 2 * a - 1).elements;
                    for b in 1..=n {
                        for to in [Label::Bar(b), Label::Tilde(b)] {
                            let Ok(next) = legal_transition(&sigma, a, to) else { continue };
                            let mut want: Vec<usize> =
                                base.iter().filter(|&&x| x != 2 * a - 1).copied().chain([to.position()]).collect();
                            want.sort_unstable();
                            assert_eq!(catalan_subset(&next, 2 * a).elements, want, "{sigma} ({a},{to})");
                            let grew = matches!(to, Label::Tilde(_)) as usize;
                            assert_eq!(next.len(), sigma.len() + grew);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn swaps() {
        let sigma = p("1|2 3|4");
        assert_eq!(s_swaps(&sigma, 1).unwrap(), vec![sigma.clone()]);
        assert!(s_swaps(&p("1 2|3 4"), 3).unwrap().contains(&p("1 3|2|4")));
        assert_eq!(transition(&p("1 2|3 4"), Label::Bar(2), Label::Tilde(3)).unwrap(), p("1 3|2|4"));
    }

    /// Successors of `I_s(σ)` in a Catalan necklace, by direct enumeration.
    fn necklace_successors(i: &[usize], s: usize, n: usize) -> Vec<Vec<usize>> {
        let m = 2 * n;
        if !i.contains(&s) {
            return vec![i.to_vec()];
        }
        let mut out = Vec::new();
        for x in 1..=m {
            if x == s || i.contains(&x) {
                continue;
            }
            let mut j: Vec<usize> = i.iter().filter(|&&y| y != s).copied().chain([x]).collect();
            j.sort_unstable();
            if crate::combinat::is_catalan(&j, s % m + 1, n) {
                out.push(j);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn swaps_match_necklace_steps() {
        for n in 1..=4 {
            let m = 2 * n;
            for sigma in enumerate_nc(n).unwrap() {
                for s in 1..=m {
                    let mut got: Vec<Vec<usize>> =
                        s_swaps(&sigma, s).unwrap().iter().map(|t| catalan_subset(t, s % m + 1).elements).collect();
                    got.sort();
                    got.dedup();
                    let want = necklace_successors(&catalan_subset(&sigma, s).elements, s, n);
                    assert_eq!(got, want, "{sigma} s={s}");
                }
            }
        }
    }

    #[test]
    fn necklace_example() {
        let tau = m("(1,4)(2,6)(3,7)(5,8)");
        let want: Vec<NCPartition> =
            ["1 4|2|3", "2 4|1|3", "1 2|3 4", "1 3|2|4", "2 3|1|4", "2 4|1|3", "1 2|3 4", "1 3|2|4"].iter().map(|s| p(s)).collect();
        let neck = partition_necklace_of(&tau);
        assert_eq!(neck.entries, want);
        assert!(neck.is_valid());
        assert_eq!(partition_necklace_by_minima(&tau), neck);
    }

    #[test]
    fn necklaces_round_trip() {
        for n in 1..=4 {
            for tau in all_matchings(n) {
                let f = affine_of_matching(&tau).1;
                let neck = partition_necklace_of(&tau);
                assert!(neck.is_valid(), "{tau}");
                assert_eq!(neck.catalan_necklace(), grassmann_necklace(&f).subsets);
                assert_eq!(partition_necklace_by_minima(&tau), neck, "{tau}");
                check_extra_conditions(&neck).unwrap_or_else(|e| panic!("{tau}: {e}"));
            }
        }
    }

    #[test]
    fn noncrossing_necklace_is_constant() {
        for sigma in enumerate_nc(4).unwrap() {
            let neck = partition_necklace_of(&matching_of_partition(&sigma));
            assert!(neck.entries.iter().all(|s| *s == sigma));
        }
        assert!(partition_necklace(&GrassmannNecklace { period: 4, subsets: vec![vec![2]; 4] }).is_err());
    }

    #[test]
    fn electroid_extremes() {
        for n in 1..=4 {
            assert_eq!(electroid(&Matching::top(n)).len(), nc_index(n).list.len());
            assert_eq!(oh_electroid(&Matching::top(n)).len(), nc_index(n).list.len());
            for sigma in enumerate_nc(n).unwrap() {
                let tau = matching_of_partition(&sigma);
                assert_eq!(electroid(&tau).members, vec![sigma.clone()]);
                assert_eq!(oh_electroid(&tau).members, vec![sigma]);
            }
        }
    }

    #[test]
    fn oh_characterization() {
        for n in 1..=4 {
            for tau in all_matchings(n) {
                assert_eq!(oh_electroid(&tau), electroid(&tau), "{tau}");
            }
        }
        for tau in [m("(1,7)(2,9)(3,8)(4,10)(5,6)"), Matching::top(5), m("(1,6)(2,8)(3,5)(4,10)(7,9)")] {
            assert_eq!(oh_electroid(&tau), electroid(&tau), "{tau}");
        }
    }

    #[test]
    fn three_orders_agree() {
        let all = all_matchings(4);
        let data: Vec<(Electroid, PartitionNecklace)> = all.iter().map(|t| (electroid(t), partition_necklace_of(t))).collect();
        for (i, small) in all.iter().enumerate() {
            for (j, big) in all.iter().enumerate() {
                let leq = matching_leq(small, big).unwrap();
                assert_eq!(data[i].0.is_subset(&data[j].0), leq, "{small} {big}");
                assert_eq!(necklace_geq(&data[i].1, &data[j].1), leq, "{small} {big}");
            }
        }
    }

    #[test]
    fn electroid_is_grove_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            for tau in all_matchings(n) {
                let mut net = network_of_matching(&tau);
                for e in net.edges.iter_mut() {
                    e.w = q(rng.gen_range(1..6));
                }
                let support = net.grove_vector().support();
                let e = electroid(&tau);
                assert_eq!(support.len(), e.len(), "{tau}");
                assert!(support.iter().all(|s| e.contains(s)), "{tau}");
            }
        }
    }
}
