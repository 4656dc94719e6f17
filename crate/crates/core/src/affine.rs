//! Bounded affine permutations, Grassmann necklaces and the uncrossing order on matchings.

use std::fmt;

use crate::combinat::{dominance_leq, Matching};
use crate::error::{invalid, Error, Result};

/// Bounded affine permutation of period `N`, stored by its window `[f(1), ..., f(N)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundedAffinePermutation {
    window: Vec<i64>,
}

impl BoundedAffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let m = window.len() as i64;
        if m == 0 {
            return Err(invalid("empty window"));
        }
        let mut hit = vec![false; m as usize];
        let mut excess = 0;
        for (idx, &v) in window.iter().enumerate() {
            let i = idx as i64 + 1;
            if v < i || v > i + m {
                return Err(invalid(format!("f({i}) = {v} out of bounds")));
            }
            let r = v.rem_euclid(m) as usize;
            if hit[r] {
                return Err(invalid(format!("window {window:?} is not a bijection")));
            }
            hit[r] = true;
            excess += v - i;
        }
        debug_assert_eq!(excess % m, 0);
        Ok(BoundedAffinePermutation { window })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let window = body
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad window {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(window).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn period(&self) -> usize {
        self.window.len()
    }

    pub fn k(&self) -> usize {
        let m = self.window.len() as i64;
        let excess: i64 = self.window.iter().enumerate().map(|(i, &v)| v - i as i64 - 1).sum();
        (excess / m) as usize
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `f(i)` for any integer `i`.
    pub fn eval(&self, i: i64) -> i64 {
        let m = self.window.len() as i64;
        let (t, r) = normalize(i, m);
        self.window[(r - 1) as usize] + t * m
    }

    /// `r(i, j) = #{a ≤ i : f(a) ≥ j}`.
    pub fn rank(&self, i: i64, j: i64) -> usize {
        let m = self.window.len() as i64;
        (j - m..=i).filter(|&a| self.eval(a) >= j).count()
    }
}

impl fmt::Display for BoundedAffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Writes `i = t*m + r` with `r` in `[1, m]`.
fn normalize(i: i64, m: i64) -> (i64, i64) {
    let r = (i - 1).rem_euclid(m) + 1;
    ((i - r) / m, r)
}

fn reduce(x: i64, m: usize) -> usize {
    normalize(x, m as i64).1 as usize
}

/// `(g_τ, f_τ)` with `g_τ(i) = τ(i)` or `τ(i) + 2n`, and `f_τ = g_τ - 1`.
pub fn affine_of_matching(tau: &Matching) -> (BoundedAffinePermutation, BoundedAffinePermutation) {
    let m = 2 * tau.n();
    let g: Vec<i64> = (1..=m)
        .map(|i| {
            let t = tau.partner(i);
            if i < t {
                t as i64
            } else {
                (t + m) as i64
            }
        })
        .collect();
    let f = g.iter().map(|v| v - 1).collect();
    (BoundedAffinePermutation { window: g }, BoundedAffinePermutation { window: f })
}

pub fn is_electrical(f: &BoundedAffinePermutation) -> bool {
    let m = f.period() as i64;
    if m % 2 != 0 || f.k() as i64 != m / 2 - 1 {
        return false;
    }
    (1..=m).all(|i| {
        let j = f.eval(i);
        j <= i + m - 2 && (f.eval(j + 1) - (i - 1)).rem_euclid(m) == 0
    })
}

/// The unique `τ` with `f_τ = f`.
pub fn electrical_to_matching(f: &BoundedAffinePermutation) -> Result<Matching> {
    if !is_electrical(f) {
        return Err(invalid(format!("{f} is not electrical")));
    }
    let m = f.period();
    let mut partner = vec![0; m + 1];
    for i in 1..=m {
        partner[i] = reduce(f.eval(i as i64) + 1, m);
    }
    Matching::from_partner(m / 2, &partner)
}

/// Number of inversions `(i, j)` with `i ∈ [N]`, `i < j` and `f(i) > f(j)`.
pub fn length(f: &BoundedAffinePermutation) -> usize {
    let m = f.period() as i64;
    (1..=m).map(|i| (i + 1..i + m).filter(|&j| f.eval(i) > f.eval(j)).count()).sum()
}

fn same_type(f: &BoundedAffinePermutation, g: &BoundedAffinePermutation) -> Result<()> {
    if f.period() != g.period() || f.k() != g.k() {
        return Err(invalid(format!("{f} and {g} have different types")));
    }
    Ok(())
}

/// Bruhat order through affine rank matrices on the band `i ∈ [1,N]`, `j ∈ [i-N, i+N+1]`.
pub fn bruhat_leq(f: &BoundedAffinePermutation, g: &BoundedAffinePermutation) -> Result<bool> {
    same_type(f, g)?;
    let m = f.period() as i64;
    for i in 1..=m {
        for j in i - m..=i + m + 1 {
            if f.rank(i, j) > g.rank(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Bruhat order through the necklace criterion.
pub fn bruhat_leq_by_necklace(f: &BoundedAffinePermutation, g: &BoundedAffinePermutation) -> Result<bool> {
    same_type(f, g)?;
    Ok(necklace_leq(&grassmann_necklace(f), &grassmann_necklace(g)))
}

/// `(I_1, ..., I_N)` as sorted subsets of `[N]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannNecklace {
    pub period: usize,
    pub subsets: Vec<Vec<usize>>,
}

impl GrassmannNecklace {
    pub fn new(period: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        if subsets.len() != period || period == 0 {
            return Err(invalid("necklace needs one subset per position"));
        }
        let k = subsets[0].len();
        let mut subsets = subsets;
        for s in subsets.iter_mut() {
            s.sort_unstable();
            if s.len() != k || s.iter().any(|&x| x == 0 || x > period) || s.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("bad necklace entry {s:?}")));
            }
        }
        for a in 1..=period {
            let cur = &subsets[a - 1];
            let next = &subsets[a % period];
            if !cur.contains(&a) {
                if cur != next {
                    return Err(invalid(format!("I_{a} must equal I_{}", a % period + 1)));
                }
            } else {
                let kept = cur.iter().filter(|&&x| x != a).all(|x| next.contains(x));
                if !kept {
                    return Err(invalid(format!("I_{} is not I_{a} with {a} replaced", a % period + 1)));
                }
            }
        }
        Ok(GrassmannNecklace { period, subsets })
    }

    pub fn k(&self) -> usize {
        self.subsets[0].len()
    }

    pub fn get(&self, a: usize) -> &[usize] {
        &self.subsets[(a - 1) % self.period]
    }
}

/// `I_a = {f(b) : b < a, f(b) ≥ a} mod N`.
pub fn grassmann_necklace(f: &BoundedAffinePermutation) -> GrassmannNecklace {
    let m = f.period();
    let mi = m as i64;
    let subsets = (1..=mi)
        .map(|a| {
            let mut s: Vec<usize> =
                (a - mi..a).map(|b| f.eval(b)).filter(|&v| v >= a).map(|v| reduce(v, m)).collect();
            s.sort_unstable();
            s
        })
        .collect();
    GrassmannNecklace { period: m, subsets }
}

/// `J_b = {a < b : f(a) ≥ b} mod N`.
pub fn dual_necklace(f: &BoundedAffinePermutation) -> GrassmannNecklace {
    let m = f.period();
    let mi = m as i64;
    let subsets = (1..=mi)
        .map(|b| {
            let mut s: Vec<usize> = (b - mi..b).filter(|&a| f.eval(a) >= b).map(|a| reduce(a, m)).collect();
            s.sort_unstable();
            s
        })
        .collect();
    GrassmannNecklace { period: m, subsets }
}

pub fn necklaces(f: &BoundedAffinePermutation) -> (GrassmannNecklace, GrassmannNecklace) {
    (grassmann_necklace(f), dual_necklace(f))
}

/// Inverse of [`grassmann_necklace`].
pub fn affine_of_necklace(neck: &GrassmannNecklace) -> Result<BoundedAffinePermutation> {
    let m = neck.period;
    let mut window = Vec::with_capacity(m);
    for a in 1..=m {
        let cur = neck.get(a);
        let next = neck.get(a % m + 1);
        let v = if !cur.contains(&a) {
            a as i64
        } else if cur == next {
            (a + m) as i64
        } else {
            let added: Vec<usize> = next.iter().copied().filter(|x| !cur.contains(x)).collect();
            let &[x] = added.as_slice() else {
                return Err(invalid("necklace step adds more than one element"));
            };
            // lift into (a, a + N)
            let mut v = x as i64;
            while v <= a as i64 {
                v += m as i64;
            }
            v
        };
        window.push(v);
    }
    let f = BoundedAffinePermutation::new(window)?;
    if grassmann_necklace(&f) != *neck {
        return Err(Error::Inconsistent("necklace does not come from a bounded affine permutation".into()));
    }
    Ok(f)
}

pub fn necklace_leq(a: &GrassmannNecklace, b: &GrassmannNecklace) -> bool {
    a.period == b.period
        && a.k() == b.k()
        && (1..=a.period).all(|s| dominance_leq(a.get(s), b.get(s), s, a.period).unwrap_or(false))
}

/// Covers `τ' ⋖ τ` in the uncrossing order, by the arc criterion.
pub fn uncross_covers(tau: &Matching) -> Vec<Matching> {
    let m = 2 * tau.n();
    let strand_joins = |lo: usize, hi: usize, lo2: usize, hi2: usize| {
        // open cyclic arcs (lo, hi) and (lo2, hi2)
        let inside = |x: usize, l: usize, h: usize| {
            let rx = (x + m - l) % m;
            let rh = (h + m - l) % m;
            rx > 0 && rx < rh
        };
        (1..=m).any(|x| inside(x, lo, hi) && inside(tau.partner(x), lo2, hi2))
    };
    let mut out = Vec::new();
    for (a, b, c, d) in crossing_quads(tau) {
        if !strand_joins(a, b, c, d) {
            out.push(rewire(tau, &[(a, d), (b, c)]));
        }
        if !strand_joins(b, c, d, a) {
            out.push(rewire(tau, &[(a, b), (c, d)]));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Covers by trying both resolutions of every crossing and keeping those that drop `c` by one.
pub fn uncross_covers_by_count(tau: &Matching) -> Vec<Matching> {
    let c = tau.crossing_number();
    let mut out: Vec<Matching> = crossing_quads(tau)
        .into_iter()
        .flat_map(|(a, b, c2, d)| [rewire(tau, &[(a, d), (b, c2)]), rewire(tau, &[(a, b), (c2, d)])])
        .filter(|t| t.crossing_number() + 1 == c)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Crossing chord pairs `(a,c), (b,d)` with `a < b < c < d`.
fn crossing_quads(tau: &Matching) -> Vec<(usize, usize, usize, usize)> {
    let pairs = tau.pairs();
    let mut out = Vec::new();
    for &(a, c) in &pairs {
        for &(b, d) in &pairs {
            if a < b && b < c && c < d {
                out.push((a, b, c, d));
            }
        }
    }
    out
}

fn rewire(tau: &Matching, new_pairs: &[(usize, usize)]) -> Matching {
    let touched: Vec<usize> = new_pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
    let mut pairs: Vec<(usize, usize)> =
        tau.pairs().into_iter().filter(|(x, y)| !touched.contains(x) && !touched.contains(y)).collect();
    pairs.extend_from_slice(new_pairs);
    Matching::from_pairs(tau.n(), &pairs).expect("rewiring keeps a perfect matching")
}

/// `τ' ≤ τ` in the uncrossing order, via `f_τ ≤ f_τ'` in Bruhat order.
pub fn matching_leq(tau_prime: &Matching, tau: &Matching) -> Result<bool> {
    if tau_prime.n() != tau.n() {
        return Err(invalid("matchings of different sizes"));
    }
    bruhat_leq(&affine_of_matching(tau).1, &affine_of_matching(tau_prime).1)
}

/// All bounded affine permutations of type `(k, N)`, in lexicographic window order.
pub fn enumerate_bounded(k: usize, m: usize) -> Vec<BoundedAffinePermutation> {
    let mut out = Vec::new();
    let mut window = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn go(
        k: usize,
        m: usize,
        window: &mut Vec<i64>,
        used: &mut Vec<bool>,
        out: &mut Vec<BoundedAffinePermutation>,
    ) {
        let i = window.len() as i64 + 1;
        if window.len() == m {
            let excess: i64 = window.iter().enumerate().map(|(x, v)| v - x as i64 - 1).sum();
            if excess == (k * m) as i64 {
                out.push(BoundedAffinePermutation { window: window.clone() });
            }
            return;
        }
        for v in i..=i + m as i64 {
            let r = v.rem_euclid(m as i64) as usize;
            if used[r] {
                continue;
            }
            used[r] = true;
            window.push(v);
            go(k, m, window, used, out);
            window.pop();
            used[r] = false;
        }
    }
    go(k, m, &mut window, &mut used, &mut out);
    out
}
