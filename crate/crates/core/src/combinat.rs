//! Non-crossing partitions, their duals, matchings on `[2n]` and Catalan subsets.
//!
//! Bar label `i` sits at position `2i-1` of `[2n]` and tilde label `i` at `2i`,
//! so tilde `i` lies between bars `i` and `i+1`.

use std::fmt;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCPartition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl NCPartition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n must be positive"));
        }
        let mut seen = vec![false; n + 1];
        let mut parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        for p in &parts {
            if p.is_empty() {
                return Err(invalid("empty part"));
            }
            for &x in p {
                if x == 0 || x > n || seen[x] {
                    return Err(invalid(format!("label {x} repeated or out of range 1..{n}")));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return Err(invalid(format!("label {x} missing")));
        }
        parts.sort();
        let sigma = NCPartition { n, parts };
        if !sigma.is_noncrossing() {
            return Err(invalid(format!("partition {sigma} is crossing")));
        }
        Ok(sigma)
    }

    pub fn singletons(n: usize) -> Self {
        NCPartition { n, parts: (1..=n).map(|i| vec![i]).collect() }
    }

    pub fn full(n: usize) -> Self {
        NCPartition { n, parts: vec![(1..=n).collect()] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `block[i]` is the index of the part containing label `i` (index 0 unused).
    pub fn block_ids(&self) -> Vec<usize> {
        let mut b = vec![usize::MAX; self.n + 1];
        for (k, p) in self.parts.iter().enumerate() {
            for &x in p {
                b[x] = k;
            }
        }
        b
    }

    pub fn part_of(&self, label: usize) -> &[usize] {
        self.parts.iter().find(|p| p.contains(&label)).expect("label in range")
    }

    pub fn same_part(&self, a: usize, b: usize) -> bool {
        self.part_of(a).contains(&b)
    }

    pub fn is_singleton(&self, label: usize) -> bool {
        self.part_of(label).len() == 1
    }

    fn is_noncrossing(&self) -> bool {
        blocks_noncrossing(&self.block_ids()[1..])
    }

    /// Parses the canonical text form, e.g. `"1 4 6|2 3|5"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for chunk in s.split('|') {
            let part: Vec<usize> = chunk
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad label {t:?} in {s:?}"))))
                .collect::<Result<_>>()?;
            if part.is_empty() {
                return Err(Error::Parse(format!("empty part in {s:?}")));
            }
            parts.push(part);
        }
        let n = parts.iter().map(Vec::len).sum();
        NCPartition::new(n, parts).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Relabels `i -> i + shift (mod n)`.
    pub fn rotate(&self, shift: isize) -> Self {
        let n = self.n as isize;
        let parts = self
            .parts
            .iter()
            .map(|p| p.iter().map(|&x| ((x as isize - 1 + shift).rem_euclid(n) + 1) as usize).collect())
            .collect();
        NCPartition::new(self.n, parts).expect("rotation preserves non-crossing")
    }
}

impl fmt::Display for NCPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .parts
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", s.join("|"))
    }
}

/// `block` lists block ids of labels `1..=n` in order.
fn blocks_noncrossing(block: &[usize]) -> bool {
    let n = block.len();
    for a in 0..n {
        for b in a + 1..n {
            if block[b] == block[a] {
                continue;
            }
            for c in b + 1..n {
                if block[c] != block[a] {
                    continue;
                }
                if (c + 1..n).any(|d| block[d] == block[b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// All non-crossing partitions of `[n]`, sorted by canonical string.
pub fn enumerate_nc(n: usize) -> Result<Vec<NCPartition>> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let mut out = Vec::new();
    let mut rgs = Vec::with_capacity(n);
    grow_rgs(n, &mut rgs, 0, &mut out);
    out.sort_by_cached_key(|s| s.to_string());
    Ok(out)
}

fn grow_rgs(n: usize, rgs: &mut Vec<usize>, blocks: usize, out: &mut Vec<NCPartition>) {
    if !blocks_noncrossing(rgs) {
        return;
    }
    if rgs.len() == n {
        let mut parts = vec![Vec::new(); blocks];
        for (i, &b) in rgs.iter().enumerate() {
            parts[b].push(i + 1);
        }
        out.push(NCPartition { n, parts });
        return;
    }
    for b in 0..=blocks {
        rgs.push(b);
        grow_rgs(n, rgs, blocks.max(b + 1), out);
        rgs.pop();
    }
}

/// Fixed-point-free involution on `[2n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    n: usize,
    partner: Vec<usize>,
}

impl Matching {
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n must be positive"));
        }
        let mut partner = vec![0; 2 * n + 1];
        for &(a, b) in pairs {
            if a == b || a == 0 || b == 0 || a > 2 * n || b > 2 * n || partner[a] != 0 || partner[b] != 0 {
                return Err(invalid(format!("bad pair ({a},{b}) for n={n}")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if (1..=2 * n).any(|i| partner[i] == 0) {
            return Err(invalid("matching does not cover [2n]"));
        }
        Ok(Matching { n, partner })
    }

    /// `partner` is indexed from 1; entry 0 is ignored.
    pub fn from_partner(n: usize, partner: &[usize]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> =
            (1..=2 * n).filter(|&i| i < partner[i]).map(|i| (i, partner[i])).collect();
        Matching::from_pairs(n, &pairs)
    }

    /// Parses `"(1,12)(2,7)..."`; `n` is half the number of endpoints.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad matching {s:?}"));
        let mut pairs = Vec::new();
        let body = s.trim();
        if !body.ends_with(')') {
            return Err(bad());
        }
        for chunk in body.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let inner = chunk.strip_prefix('(').ok_or_else(bad)?;
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            pairs.push((a, b));
        }
        if pairs.is_empty() {
            return Err(bad());
        }
        Matching::from_pairs(pairs.len(), &pairs).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    /// Partner of `i` with `i` read modulo `2n`.
    pub fn partner_mod(&self, i: i64) -> usize {
        let m = 2 * self.n as i64;
        self.partner[((i - 1).rem_euclid(m) + 1) as usize]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=2 * self.n).filter(|&i| i < self.partner[i]).map(|i| (i, self.partner[i])).collect()
    }

    pub fn top(n: usize) -> Self {
        let pairs: Vec<_> = (1..=n).map(|i| (i, i + n)).collect();
        Matching::from_pairs(n, &pairs).expect("valid")
    }

    pub fn crossing_number(&self) -> usize {
        let p = self.pairs();
        let mut c = 0;
        for (x, &(a, b)) in p.iter().enumerate() {
            for &(c2, d) in &p[x + 1..] {
                if (a < c2 && c2 < b && b < d) || (c2 < a && a < d && d < b) {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn is_noncrossing(&self) -> bool {
        self.crossing_number() == 0
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// All `(2n-1)!!` matchings on `[2n]`, in lexicographic order of their pair lists.
pub fn all_matchings(n: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    let mut partner = vec![0; 2 * n + 1];
    fill_matchings(n, &mut partner, &mut out);
    out
}

fn fill_matchings(n: usize, partner: &mut Vec<usize>, out: &mut Vec<Matching>) {
    let Some(a) = (1..=2 * n).find(|&i| partner[i] == 0) else {
        out.push(Matching { n, partner: partner.clone() });
        return;
    };
    for b in a + 1..=2 * n {
        if partner[b] == 0 {
            partner[a] = b;
            partner[b] = a;
            fill_matchings(n, partner, out);
            partner[a] = 0;
            partner[b] = 0;
        }
    }
}

/// The matching `τ(σ)`: position `2i` (right of bar `i`) is joined to position `2j-1`
/// (left of bar `j`), where `j` follows `i` cyclically within its part.
pub fn matching_of_partition(sigma: &NCPartition) -> Matching {
    let n = sigma.n;
    let mut partner = vec![0; 2 * n + 1];
    for p in &sigma.parts {
        for (k, &i) in p.iter().enumerate() {
            let j = p[(k + 1) % p.len()];
            partner[2 * i] = 2 * j - 1;
            partner[2 * j - 1] = 2 * i;
        }
    }
    Matching { n, partner }
}

/// Inverse of [`matching_of_partition`]. With `require_noncrossing` the crossing number is
/// checked first; either way the strands must link bars into a non-crossing partition.
pub fn partition_of_matching(tau: &Matching, require_noncrossing: bool) -> Result<NCPartition> {
    if require_noncrossing && !tau.is_noncrossing() {
        return Err(Error::NotNoncrossing(tau.to_string()));
    }
    bars_linked(tau, 0).ok_or_else(|| Error::NotNoncrossing(tau.to_string()))
}

/// Reads bar labels linked by strands `2i+offset -> 2j-1+offset` (offset 1 reads tildes).
fn bars_linked(tau: &Matching, offset: usize) -> Option<NCPartition> {
    let n = tau.n;
    let m = 2 * n;
    let wrap = |x: usize| (x - 1) % m + 1;
    let mut next = vec![0; n + 1];
    for i in 1..=n {
        let j = tau.partner[wrap(2 * i + offset)];
        let shifted = (j + m - offset - 1) % m + 1;
        if shifted % 2 == 0 {
            return None;
        }
        next[i] = (shifted + 1) / 2;
    }
    let mut seen = vec![false; n + 1];
    let mut parts = Vec::new();
    for i in 1..=n {
        if seen[i] {
            continue;
        }
        let mut part = Vec::new();
        let mut x = i;
        while !seen[x] {
            seen[x] = true;
            part.push(x);
            x = next[x];
        }
        if x != i {
            return None;
        }
        parts.push(part);
    }
    NCPartition::new(n, parts).ok()
}

/// The dual partition `σ̃` on tilde labels.
pub fn dual(sigma: &NCPartition) -> NCPartition {
    bars_linked(&matching_of_partition(sigma), 1).expect("dual of a non-crossing partition")
}

/// The partition whose dual is `tilde`; inverse of [`dual`].
pub fn undual(tilde: &NCPartition) -> NCPartition {
    dual(tilde).rotate(1)
}

/// Rank of `x` in the order `a < a+1 < ... < m < 1 < ... < a-1` on `[m]`.
pub fn rank_from(x: usize, a: usize, m: usize) -> usize {
    (x + m - a) % m
}

pub fn sort_from(set: &[usize], a: usize, m: usize) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_by_key(|&x| rank_from(x, a, m));
    v
}

fn max_from(part: impl Iterator<Item = usize>, a: usize, m: usize) -> usize {
    part.max_by_key(|&x| rank_from(x, a, m)).expect("nonempty part")
}

/// Subset of `[2n]` together with the base `a` of its shifted order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalanSubset {
    pub base: usize,
    pub elements: Vec<usize>,
}

/// `I_a(σ)`: the complement of the `≤_a`-maxima of the parts of `σ` and of `σ̃`.
pub fn catalan_subset(sigma: &NCPartition, a: usize) -> CatalanSubset {
    let n = sigma.n;
    let m = 2 * n;
    let mut excluded = vec![false; m + 1];
    for p in &sigma.parts {
        excluded[max_from(p.iter().map(|&i| 2 * i - 1), a, m)] = true;
    }
    for p in &dual(sigma).parts {
        excluded[max_from(p.iter().map(|&i| 2 * i), a, m)] = true;
    }
    CatalanSubset { base: a, elements: (1..=m).filter(|&x| !excluded[x]).collect() }
}

/// Up-step positions (as ranks from `a`, 0-based) of the path `P(I)`, or `None` if
/// `I` is not an `a`-shifted Catalan subset of `[2n]`.
fn dyck_ups(elements: &[usize], a: usize, n: usize) -> Option<Vec<bool>> {
    let m = 2 * n;
    if elements.len() + 1 != n {
        return None;
    }
    let mut up = vec![false; m];
    up[0] = true;
    for &x in elements {
        if x == 0 || x > m {
            return None;
        }
        let r = rank_from(x, a, m) + 1;
        if r >= m || up[r] {
            return None;
        }
        up[r] = true;
    }
    let mut height = 0i64;
    for &u in &up {
        height += if u { 1 } else { -1 };
        if height < 0 {
            return None;
        }
    }
    (height == 0).then_some(up)
}

pub fn is_catalan(elements: &[usize], a: usize, n: usize) -> bool {
    dyck_ups(elements, a, n).is_some()
}

/// Inverse of [`catalan_subset`]: the Dyck path of `I` read from `a` is the opener
/// pattern of the non-crossing matching `τ(σ)`.
pub fn partition_of_subset(set: &CatalanSubset, n: usize) -> Result<NCPartition> {
    let a = set.base;
    let m = 2 * n;
    let ups = dyck_ups(&set.elements, a, n)
        .ok_or_else(|| invalid(format!("{} is not a Catalan subset for base {a}", format_subset(&set.elements))))?;
    let mut partner = vec![0; m + 1];
    let mut stack = Vec::new();
    for (r, &u) in ups.iter().enumerate() {
        let pos = (r + a - 1) % m + 1;
        if u {
            stack.push(pos);
        } else {
            let o = stack.pop().expect("balanced");
            partner[o] = pos;
            partner[pos] = o;
        }
    }
    let tau = Matching { n, partner };
    partition_of_matching(&tau, true)
}

/// Shifted dominance: sort both sets by `≤_a` and compare entrywise.
pub fn dominance_leq(i: &[usize], j: &[usize], a: usize, m: usize) -> Result<bool> {
    if i.len() != j.len() {
        return Err(invalid("subsets of different sizes"));
    }
    let si = sort_from(i, a, m);
    let sj = sort_from(j, a, m);
    Ok(si.iter().zip(&sj).all(|(&x, &y)| rank_from(x, a, m) <= rank_from(y, a, m)))
}

/// Shifted lexicographic comparison of two equal-size subsets.
pub fn lex_cmp_from(i: &[usize], j: &[usize], a: usize, m: usize) -> std::cmp::Ordering {
    let ri: Vec<usize> = sort_from(i, a, m).iter().map(|&x| rank_from(x, a, m)).collect();
    let rj: Vec<usize> = sort_from(j, a, m).iter().map(|&x| rank_from(x, a, m)).collect();
    ri.cmp(&rj)
}

pub fn format_subset(s: &[usize]) -> String {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_subset(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad subset {s:?}"))))
        .collect::<Result<_>>()?;
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Parse(format!("repeated element in {s:?}")));
    }
    Ok(v)
}

/// All `k`-subsets of `[m]` in lexicographic order.
pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=m {
            if m - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    go(1, m, k, &mut cur, &mut out);
    out
}

pub fn catalan_number(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NCPartition {
        NCPartition::parse(s).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_nc(1).unwrap().len(), 1);
        assert_eq!(enumerate_nc(3).unwrap().len(), 5);
        assert_eq!(enumerate_nc(5).unwrap().len(), 42);
        assert!(enumerate_nc(0).is_err());
        let l = enumerate_nc(4).unwrap();
        let strings: Vec<String> = l.iter().map(|s| s.to_string()).collect();
        let mut sorted = strings.clone();
        sorted.sort();
        assert_eq!(strings, sorted);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual(&p("1 4 6|2 3|5")), p("1 3|2|4 5|6"));
        assert_eq!(dual(&p("1|2")), p("1 2"));
        assert_eq!(dual(&p("1 2 3")), p("1|2|3"));
    }

    #[test]
    fn matching_examples() {
        let tau = matching_of_partition(&p("1 4 6|2 3|5"));
        assert_eq!(tau.to_string(), "(1,12)(2,7)(3,6)(4,5)(8,11)(9,10)");
        assert_eq!(matching_of_partition(&p("1")).to_string(), "(1,2)");
        assert_eq!(matching_of_partition(&p("1 2")).to_string(), "(1,4)(2,3)");
        assert_eq!(partition_of_matching(&tau, true).unwrap(), p("1 4 6|2 3|5"));
        assert_eq!(partition_of_matching(&Matching::parse("(1,2)(3,4)").unwrap(), true).unwrap(), p("1|2"));
        let top = Matching::parse("(1,4)(2,5)(3,6)").unwrap();
        assert!(matches!(partition_of_matching(&top, true), Err(Error::NotNoncrossing(_))));
        assert_eq!(partition_of_matching(&top, false).unwrap(), p("1 2 3"));
    }

    #[test]
    fn crossing_numbers() {
        assert_eq!(Matching::parse("(1,7)(2,9)(3,8)(4,10)(5,6)").unwrap().crossing_number(), 5);
        assert_eq!(Matching::parse("(1,4)(2,5)(3,6)").unwrap().crossing_number(), 3);
        assert_eq!(Matching::parse("(1,12)(2,7)(3,6)(4,5)(8,11)(9,10)").unwrap().crossing_number(), 0);
        for bad in ["(1,2", "(1,2)(3", "1,2)", "(1,2)(1,3)", ""] {
            assert!(Matching::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn catalan_subset_examples() {
        assert_eq!(catalan_subset(&p("1 4|2|3"), 1).elements, vec![1, 2, 4]);
        assert_eq!(catalan_subset(&p("1|2"), 1).elements, vec![2]);
        assert_eq!(catalan_subset(&p("1 2 3"), 1).elements, vec![1, 3]);
        let back = partition_of_subset(&CatalanSubset { base: 1, elements: vec![1, 2, 4] }, 4).unwrap();
        assert_eq!(back, p("1 4|2|3"));
        assert!(partition_of_subset(&CatalanSubset { base: 1, elements: vec![2, 5, 6] }, 4).is_err());
    }

    #[test]
    fn catalan_subsets_are_exactly_the_images() {
        // Oracle: filter all (n-1)-subsets by the Dyck condition, compare with the image set.
        for n in 1..=5 {
            let m = 2 * n;
            let nc = enumerate_nc(n).unwrap();
            for a in 1..=m {
                let mut image: Vec<Vec<usize>> = nc.iter().map(|s| catalan_subset(s, a).elements).collect();
                image.sort();
                image.dedup();
                assert_eq!(image.len(), nc.len());
                let cat: Vec<Vec<usize>> = k_subsets(m, n - 1).into_iter().filter(|i| is_catalan(i, a, n)).collect();
                assert_eq!(image, cat);
                for s in &nc {
                    assert_eq!(&partition_of_subset(&catalan_subset(s, a), n).unwrap(), s);
                }
            }
        }
    }

    /// Independent route: walk clockwise from `a` marking first visits of strands of
    /// `τ(σ)`, drop `a` and shift down by one.
    fn subset_by_strand_walk(sigma: &NCPartition, a: usize) -> Vec<usize> {
        let tau = matching_of_partition(sigma);
        let m = 2 * sigma.n();
        let mut seen = vec![false; m + 1];
        let mut out = Vec::new();
        for r in 0..m {
            let x = (a - 1 + r) % m + 1;
            if !seen[tau.partner(x)] && x != a {
                out.push((x + m - 2) % m + 1);
            }
            seen[x] = true;
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn max_rule_agrees_with_strand_walk() {
        for n in 1..=6 {
            for s in enumerate_nc(n).unwrap() {
                for a in 1..=2 * n {
                    assert_eq!(catalan_subset(&s, a).elements, subset_by_strand_walk(&s, a), "{s} a={a}");
                }
            }
        }
    }

    #[test]
    fn preimage_of_initial_segment() {
        let expected = ["1", "1 2", "1 3|2", "1 4|2 3", "1 5|2 4|3"];
        for n in 1..=5 {
            let target = CatalanSubset { base: 1, elements: (1..n).collect() };
            let brute: Vec<_> =
                enumerate_nc(n).unwrap().into_iter().filter(|s| catalan_subset(s, 1) == target).collect();
            assert_eq!(brute.len(), 1);
            assert_eq!(brute[0].to_string(), expected[n - 1]);
            assert_eq!(partition_of_subset(&target, n).unwrap(), brute[0]);
        }
    }

    #[test]
    fn dyck_path_of_worked_example() {
        let ups = dyck_ups(&[1, 2, 4, 5, 9], 1, 6).unwrap();
        let word: String = ups.iter().map(|&u| if u { 'U' } else { 'D' }).collect();
        assert_eq!(word, "UUUDUUDDDUDD");
    }

    #[test]
    fn dominance_examples() {
        let a = [1, 2, 4, 5, 9];
        let b = [1, 2, 3, 4, 5];
        assert!(dominance_leq(&a, &a, 1, 12).unwrap());
        assert!(dominance_leq(&b, &a, 1, 12).unwrap());
        assert!(!dominance_leq(&a, &b, 1, 12).unwrap());
        assert!(dominance_leq(&a, &b[..4], 1, 12).is_err());
    }

    #[test]
    fn undual_inverts_dual() {
        for n in 1..=6 {
            for s in enumerate_nc(n).unwrap() {
                let d = dual(&s);
                assert_eq!(s.len() + d.len(), n + 1);
                assert_eq!(undual(&d), s);
            }
        }
    }

    #[test]
    fn subsets_and_catalan_numbers() {
        assert_eq!(k_subsets(5, 2).len(), 10);
        assert_eq!(k_subsets(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!((1..=7).map(catalan_number).collect::<Vec<_>>(), vec![1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(parse_subset("4,1,2").unwrap(), vec![1, 2, 4]);
        assert_eq!(format_subset(&[4, 1, 2]), "1,2,4");
    }
}
