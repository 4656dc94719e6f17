//! Seeded verification suites behind `electroid-lab verify`.
//!
//! Each suite runs a list of numbered checks. Checks may run on worker threads, but every
//! random object is drawn from its own ChaCha stream keyed by the check index, so the
//! report depends only on `(n, seed, trials)`. On failure the smallest witness is kept.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::affine::{affine_of_matching, bruhat_leq_by_necklace, length, matching_leq, uncross_covers};
use crate::combinat::{all_matchings, catalan_number, enumerate_nc, matching_of_partition, Matching};
use crate::electroid::{electroid, oh_electroid, Electroid};
use crate::error::{invalid, Result};
use crate::grassmann::{boundary_measurements, u_matrix};
use crate::io::network_to_json;
use crate::medial::{medial_pairing, network_of_matching};
use crate::network::{y_network, CactusNetwork, GroveVector, Mode, StarTriangle};
use crate::rat::{format_q, frac, Q};
use crate::realize::{network_from_point, stratum_of_point};
use crate::temperley::{classify_point, concordance, embed, quadratic_check, recover_groves, temperley, Point};

pub const SUITES: [&str; 8] =
    ["counts", "concordance", "braid", "poset-duality", "oh-electroid", "recovery", "realizability", "quadratic"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: usize,
    pub what: String,
    /// Canonical text form of the smallest witnessing object.
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub checks: usize,
    pub facts: Vec<String>,
    pub failure: Option<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} n={}: {} checks", self.suite, self.n, self.checks);
        match &self.failure {
            None => out.push_str(", ok\n"),
            Some(f) => out.push_str(&format!(", FAILED at check {}: {}\n  witness: {}\n", f.check, f.what, f.witness)),
        }
        for fact in &self.facts {
            out.push_str(&format!("  {fact}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let failure = self.failure.as_ref().map(|f| json!({ "check": f.check, "what": f.what, "witness": f.witness }));
        json!({
            "suite": self.suite,
            "n": self.n,
            "checks": self.checks,
            "passed": self.passed(),
            "facts": self.facts,
            "failure": failure,
        })
        .to_string()
    }
}

/// Outcome of one check: `Err((size, what, witness))` on failure.
type Check = std::result::Result<(), (usize, String, String)>;

fn fail(size: usize, what: impl Into<String>, witness: impl Into<String>) -> Check {
    Err((size, what.into(), witness.into()))
}

fn collect(suite: &str, n: usize, outcomes: Vec<Check>, facts: Vec<String>) -> SuiteReport {
    let checks = outcomes.len();
    let failure = outcomes
        .into_iter()
        .enumerate()
        .filter_map(|(i, c)| c.err().map(|(size, what, witness)| (size, i, what, witness)))
        .min_by_key(|(size, i, _, _)| (*size, *i))
        .map(|(_, check, what, witness)| Failure { check, what, witness });
    SuiteReport { suite: suite.to_string(), n, checks, facts, failure }
}

/// The random stream for check `index`.
pub fn check_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Uniform on `{1..9}/{1..9}`.
pub fn random_weight(rng: &mut impl Rng) -> Q {
    frac(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// Uniform matching of `[2n]`: pair the least free point with a uniform free partner.
pub fn random_matching(n: usize, rng: &mut impl Rng) -> Matching {
    let mut free: Vec<usize> = (1..=2 * n).collect();
    let mut pairs = Vec::with_capacity(n);
    while !free.is_empty() {
        let a = free.remove(0);
        let b = free.remove(rng.gen_range(0..free.len()));
        pairs.push((a, b));
    }
    Matching::from_pairs(n, &pairs).expect("sequential pairing is a perfect matching")
}

/// A critical network for a uniform random matching, with random weights.
pub fn random_critical_network(n: usize, rng: &mut impl Rng) -> CactusNetwork {
    let tau = random_matching(n, rng);
    let mut net = network_of_matching(&tau);
    for e in net.edges.iter_mut() {
        e.w = random_weight(rng);
    }
    net
}

/// A random critical network followed by up to two random contractions or deletions,
/// which reach cactus shapes and non-critical networks.
pub fn random_network(n: usize, rng: &mut impl Rng) -> CactusNetwork {
    let mut net = random_critical_network(n, rng);
    for _ in 0..rng.gen_range(0..=2) {
        if net.edges.is_empty() {
            break;
        }
        let e = rng.gen_range(0..net.edges.len());
        let mode = if rng.gen_bool(0.5) { Mode::Contract } else { Mode::Delete };
        if let Ok(next) = net.contract_delete(e, mode) {
            if next.validate().is_ok() {
                net = next;
            }
        }
    }
    net
}

fn net_witness(net: &CactusNetwork) -> (usize, String) {
    (net.edges.len(), network_to_json(net))
}

pub fn run_suite(name: &str, cfg: &Config) -> Result<SuiteReport> {
    if cfg.n == 0 {
        return Err(invalid("n must be positive"));
    }
    Ok(match name {
        "counts" => counts(cfg),
        "concordance" => concordance_suite(cfg),
        "braid" => braid(cfg),
        "poset-duality" => poset_duality(cfg),
        "oh-electroid" => oh_suite(cfg),
        "recovery" => recovery(cfg),
        "realizability" => realizability(cfg),
        "quadratic" => quadratic(cfg),
        other => return Err(invalid(format!("unknown suite {other:?}"))),
    })
}

/// `"all"` expands to every suite in a fixed order.
pub fn run(name: &str, cfg: &Config) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        SUITES.iter().map(|s| run_suite(s, cfg)).collect()
    } else {
        Ok(vec![run_suite(name, cfg)?])
    }
}

fn double_factorial_odd(n: usize) -> u64 {
    (1..=n as u64).map(|i| 2 * i - 1).product()
}

/// Number of `(n-1)`-subsets of `[2n]` concordant with exactly one partition.
pub fn unique_concordance_count(n: usize) -> usize {
    concordance(n).of_subset.iter().filter(|parts| parts.len() == 1).count()
}

fn counts(cfg: &Config) -> SuiteReport {
    let n = cfg.n;
    let mut outcomes = Vec::new();
    let mut facts = Vec::new();
    for k in 1..=n {
        let nc = enumerate_nc(k).expect("k >= 1").len() as u64;
        let pm = all_matchings(k).len() as u64;
        let unique = unique_concordance_count(k) as u64;
        facts.push(format!(
            "n={k}: |NC| = {nc} (Catalan {}), |P| = {pm} ((2n-1)!! = {}), unique-concordance subsets = {unique}",
            catalan_number(k),
            double_factorial_odd(k)
        ));
        let w = format!("n={k}");
        outcomes.push(if nc == catalan_number(k) { Ok(()) } else { fail(k, "non-crossing partition count", &w) });
        outcomes.push(if pm == double_factorial_odd(k) { Ok(()) } else { fail(k, "matching count", &w) });
        // the terms 1, 4, 12, 32, 80 follow n 2^(n-1)
        let expected = k as u64 * (1 << (k - 1));
        outcomes.push(if unique == expected { Ok(()) } else { fail(k, "unique-concordance count", &w) });
    }
    collect("counts", n, outcomes, facts)
}

fn concordance_suite(cfg: &Config) -> SuiteReport {
    let n = cfg.n;
    let outcomes = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let net = random_network(n, &mut check_rng(cfg.seed, t));
            let lhs = embed(&net.grove_vector());
            let rhs = boundary_measurements(&temperley(&net).graph);
            let (size, w) = net_witness(&net);
            match rhs {
                Ok(rhs) if rhs == lhs => Ok(()),
                Ok(_) => fail(size, "embedded grove vector differs from boundary measurements", w),
                Err(e) => fail(size, format!("boundary measurements failed: {e}"), w),
            }
        })
        .collect();
    collect("concordance", n, outcomes, Vec::new())
}

fn braid(cfg: &Config) -> SuiteReport {
    let n = cfg.n;
    let m = 2 * n;
    let outcomes = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = check_rng(cfg.seed, t);
            let net = random_critical_network(n, &mut rng);
            let (a, b, c) = (random_weight(&mut rng), random_weight(&mut rng), random_weight(&mut rng));
            let i = rng.gen_range(1..=m);
            let s = &a + &c + &a * &b * &c;
            let word = |w: &[(usize, &Q)]| {
                let w: Vec<(usize, Q)> = w.iter().map(|(i, t)| (*i, (*t).clone())).collect();
                net.apply_word(&w).expect("nonnegative parameters").response_matrix()
            };
            let witness = format!("i={i} a={} b={} c={} on {}", format_q(&a), format_q(&b), format_q(&c), network_to_json(&net));
            let size = net.edges.len();
            // words act on the network right to left, so the last generator is applied first
            if word(&[(i, &b), (i, &a)]) != word(&[(i, &(&a + &b))]) {
                return fail(size, "v_i(a) v_i(b) = v_i(a+b)", witness);
            }
            let u = |i: usize, t: &Q| u_matrix(i, t, m);
            if u(i, &a).mul(&u(i, &b)) != u(i, &(&a + &b)) {
                return fail(size, "u_i(a) u_i(b) = u_i(a+b)", witness);
            }
            for j in [i % m + 1, (i + m - 2) % m + 1] {
                let lhs = word(&[(i, &c), (j, &b), (i, &a)]);
                let rhs = word(&[(j, &(&a * &b / &s)), (i, &s), (j, &(&b * &c / &s))]);
                if lhs != rhs {
                    return fail(size, format!("electrical braid relation with j={j}"), witness);
                }
                let lhs = u(i, &a).mul(&u(j, &b)).mul(&u(i, &c));
                let rhs = u(j, &(&b * &c / &s)).mul(&u(i, &s)).mul(&u(j, &(&a * &b / &s)));
                if lhs != rhs {
                    return fail(size, format!("u braid relation with j={j}"), witness);
                }
            }
            if m >= 4 {
                let far = (i + 1) % m + 1;
                if word(&[(far, &b), (i, &a)]) != word(&[(i, &a), (far, &b)]) {
                    return fail(size, format!("v_i, v_{far} commute"), witness);
                }
                if u(i, &a).mul(&u(far, &b)) != u(far, &b).mul(&u(i, &a)) {
                    return fail(size, format!("u_i, u_{far} commute"), witness);
                }
            }
            let y = y_network(a.clone(), b.clone(), c.clone());
            let delta = y.star_triangle(&StarTriangle::YToDelta(0)).expect("Y has a star");
            let sum = &a + &b + &c;
            let mut want = vec![&a * &b / &sum, &b * &c / &sum, &c * &a / &sum];
            let mut got: Vec<Q> = delta.edges.iter().map(|e| e.w.clone()).collect();
            got.sort();
            want.sort();
            if got != want || !delta.grove_vector().projectively_equal(&y.grove_vector()) {
                return fail(size, "star-triangle parameters or grove vector", witness);
            }
            Ok(())
        })
        .collect();
    collect("braid", n, outcomes, Vec::new())
}

/// Down-set of `tau` under the transitive closure of uncrossing covers.
pub fn uncrossing_down_set(tau: &Matching) -> HashSet<Matching> {
    let mut seen = HashSet::from([tau.clone()]);
    let mut stack = vec![tau.clone()];
    while let Some(t) = stack.pop() {
        for c in uncross_covers(&t) {
            if seen.insert(c.clone()) {
                stack.push(c);
            }
        }
    }
    seen
}

fn poset_duality(cfg: &Config) -> SuiteReport {
    let n = cfg.n;
    let all = all_matchings(n);
    let downs: Vec<HashSet<Matching>> = all.par_iter().map(uncrossing_down_set).collect();
    let top = n * (n - 1) / 2;
    let mut outcomes: Vec<Check> = all
        .par_iter()
        .map(|tau| {
            let (g, _) = affine_of_matching(tau);
            if length(&g) != 2 * (top - tau.crossing_number()) {
                return fail(tau.crossing_number(), "length of g_tau", tau.to_string());
            }
            for c in uncross_covers(tau) {
                if c.crossing_number() + 1 != tau.crossing_number() {
                    return fail(tau.crossing_number(), format!("cover {c} drops more than one crossing"), tau.to_string());
                }
            }
            Ok(())
        })
        .collect();
    let pairs: Vec<Check> = (0..all.len() * all.len())
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / all.len(), k % all.len());
            let (lo, hi) = (&all[i], &all[j]);
            let closure = downs[j].contains(lo);
            let rank = matching_leq(lo, hi).expect("same n");
            let neck = bruhat_leq_by_necklace(&affine_of_matching(hi).1, &affine_of_matching(lo).1).expect("same type");
            if closure == rank && rank == neck {
                Ok(())
            } else {
                let size = lo.crossing_number() + hi.crossing_number();
                fail(size, format!("closure {closure}, rank {rank}, necklace {neck}"), format!("{lo} <= {hi}"))
            }
        })
        .collect();
    outcomes.extend(pairs);
    let facts = vec![format!("{} matchings, {} ordered pairs compared three ways", all.len(), all.len() * all.len())];
    collect("poset-duality", n, outcomes, facts)
}

/// `𝓔(τ)` by brute force: partitions whose matching lies in the uncrossing down-set of `τ`.
pub fn electroid_by_closure(tau: &Matching) -> Electroid {
    let down = uncrossing_down_set(tau);
    let members = crate::network::nc_index(tau.n())
        .list
        .iter()
        .filter(|s| down.contains(&matching_of_partition(s)))
        .cloned()
        .collect();
    Electroid { n: tau.n(), members }
}

fn oh_suite(cfg: &Config) -> SuiteReport {
    let n = cfg.n;
    let all = all_matchings(n);
    let outcomes = all
        .par_iter()
        .enumerate()
        .map(|(t, tau)| {
            let e = electroid(tau);
            let size = tau.crossing_number();
            if oh_electroid(tau) != e {
                return fail(size, "order electroid differs from the dominance intersection", tau.to_string());
            }
            if electroid_by_closure(tau) != e {
                return fail(size, "order electroid differs from the closure electroid", tau.to_string());
            }
            let mut net = network_of_matching(tau);
            let mut rng = check_rng(cfg.seed, t);
            for edge in net.edges.iter_mut() {
                edge.w = random_weight(&mut rng);
            }
            if net.grove_vector().support() != e.members {
                return fail(size, "grove support differs from the electroid", network_to_json(&net));
            }
            Ok(())
        })
        .collect();
    collect("oh-electroid", n, outcomes, vec![format!("{} matchings", all.len())])
}

fn recovery(cfg: &Config) -> SuiteReport {
    let n = cfg.n;
    let sigmas = enumerate_nc(n).expect("n >= 1");
    let mut outcomes: Vec<Check> = sigmas
        .par_iter()
        .map(|s| {
            let l = GroveVector::indicator(s);
            match recover_groves(&embed(&l)) {
                Ok(back) if back == l => Ok(()),
                _ => fail(s.len(), "indicator vector does not round trip", s.to_string()),
            }
        })
        .collect();
    let random: Vec<Check> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let net = random_network(n, &mut check_rng(cfg.seed, t));
            let l = net.grove_vector();
            let (size, w) = net_witness(&net);
            match recover_groves(&embed(&l)) {
                Ok(back) if back == l => Ok(()),
                _ => fail(size, "grove vector does not round trip", w),
            }
        })
        .collect();
    outcomes.extend(random);
    collect("recovery", n, outcomes, Vec::new())
}

fn realizability(cfg: &Config) -> SuiteReport {
    let n = cfg.n;
    let sigmas = enumerate_nc(n).expect("n >= 1");
    let mut outcomes: Vec<Check> = sigmas
        .par_iter()
        .map(|s| {
            let p = embed(&GroveVector::indicator(s));
            match network_from_point(&p) {
                Ok(net) if net == CactusNetwork::hollow(s.clone()) => Ok(()),
                _ => fail(s.len(), "bottom cell does not give the hollow cactus", s.to_string()),
            }
        })
        .collect();
    let random: Vec<Check> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let net = random_critical_network(n, &mut check_rng(cfg.seed, t));
            let p = embed(&net.grove_vector());
            let (size, w) = net_witness(&net);
            if stratum_of_point(&p).ok() != Some(medial_pairing(&net).tau) {
                return fail(size, "stratum label differs from the medial pairing", w);
            }
            match network_from_point(&p) {
                Ok(back) if embed(&back.grove_vector()) == p => Ok(()),
                Ok(_) => fail(size, "realized network has a different image", w),
                Err(e) => fail(size, format!("realization failed: {e}"), w),
            }
        })
        .collect();
    outcomes.extend(random);
    collect("realizability", n, outcomes, Vec::new())
}

/// Adds a random positive amount to one random coordinate.
pub fn perturb(l: &GroveVector, rng: &mut impl Rng) -> GroveVector {
    let mut out = l.clone();
    let i = rng.gen_range(0..out.coords.len());
    out.coords[i] += random_weight(rng);
    out
}

fn quadratic(cfg: &Config) -> SuiteReport {
    let n = cfg.n;
    let top = network_of_matching(&Matching::top(n));
    let results: Vec<(Check, Option<bool>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = check_rng(cfg.seed, t);
            let net = random_network(n, &mut rng);
            let l = net.grove_vector();
            let (size, w) = net_witness(&net);
            if !quadratic_check(&l, 1).unwrap_or(false) {
                return (fail(size, "k=1 relations fail on a grove vector", w), None);
            }
            // perturb a full-support point; the exchange relations decide membership
            let mut generic = top.clone();
            for e in generic.edges.iter_mut() {
                e.w = random_weight(&mut rng);
            }
            let bumped = perturb(&generic.grove_vector(), &mut rng);
            if quadratic_check(&bumped, 1).unwrap_or(true) {
                return (Ok(()), None);
            }
            let flagged = !classify_point(&Point::Grove(bumped)).expect("valid vector").in_x;
            (Ok(()), Some(flagged))
        })
        .collect();
    let tried = results.iter().filter(|(_, f)| f.is_some()).count();
    let flagged = results.iter().filter(|(_, f)| *f == Some(true)).count();
    let mut outcomes: Vec<Check> = results.into_iter().map(|(c, _)| c).collect();
    let mut facts = vec![format!("{flagged}/{tried} perturbed non-members flagged")];
    if n >= 3 {
        outcomes.push(if tried > 0 && flagged * 100 >= tried * 95 {
            Ok(())
        } else {
            fail(0, "fewer than 95% of perturbed non-members flagged", format!("{flagged}/{tried}"))
        });
    } else {
        facts.push("every nonnegative vector is a grove point for n <= 2".into());
    }
    collect("quadratic", n, outcomes, facts)
}
