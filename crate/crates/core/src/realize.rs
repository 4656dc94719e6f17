//! Strata of points of `X`, the reduction steps, and reconstruction of a cactus network
//! from a totally nonnegative point.

use num_traits::{One, Zero};

use crate::affine::{dual_necklace, electrical_to_matching, grassmann_necklace, is_electrical, length, BoundedAffinePermutation};
use crate::combinat::{k_subsets, Matching, NCPartition};
use crate::error::{invalid, Error, Result};
use crate::grassmann::{apply_u, perm_of_point, PluckerVector};
use crate::network::{CactusNetwork, Edge, Vertex};
use crate::rat::Q;
use crate::temperley::{classify_point, embed, Point};

fn size_of(p: &PluckerVector) -> Result<usize> {
    if p.m == 0 || p.m % 2 != 0 || p.k + 1 != p.m / 2 {
        return Err(invalid(format!("expected a point of Gr(n-1, 2n), got Gr({}, {})", p.k, p.m)));
    }
    Ok(p.m / 2)
}

fn wrap(x: i64, m: usize) -> usize {
    (x - 1).rem_euclid(m as i64) as usize + 1
}

pub fn stratum_of_point(p: &PluckerVector) -> Result<Matching> {
    size_of(p)?;
    let f = perm_of_point(p)?;
    if !is_electrical(&f) {
        return Err(Error::Inconsistent(format!("point lies in the non-electrical stratum {f}")));
    }
    electrical_to_matching(&f)
}

/// `s_{i-1} f s_i`.
fn conjugate_step(f: &BoundedAffinePermutation, i: usize) -> Result<BoundedAffinePermutation> {
    let m = f.period() as i64;
    let s = |j: i64, x: i64| -> i64 {
        let r = (x - j).rem_euclid(m);
        if r == 0 {
            x + 1
        } else if r == 1 {
            x - 1
        } else {
            x
        }
    };
    let i = i as i64;
    BoundedAffinePermutation::new((1..=m).map(|x| s(i - 1, f.eval(s(i, x)))).collect())
}

/// Least `i` with `i < f(i) < f(i+1)`.
pub fn reducible_index(f: &BoundedAffinePermutation) -> Option<usize> {
    (1..=f.period()).find(|&i| {
        let x = i as i64;
        x < f.eval(x) && f.eval(x) < f.eval(x + 1)
    })
}

/// One step `Δ ↦ u_i(-a)·Δ` towards a smaller cell; returns the new point and `a`.
pub fn reduce_step(p: &PluckerVector, i: usize) -> Result<(PluckerVector, crate::rat::Q)> {
    let n = size_of(p)?;
    let m = 2 * n;
    if i == 0 || i > m {
        return Err(invalid(format!("index {i} outside 1..={m}")));
    }
    let f = perm_of_point(p)?;
    let x = i as i64;
    if !(x < f.eval(x) && f.eval(x) < f.eval(x + 1)) {
        return Err(invalid(format!("{f} does not satisfy i < f(i) < f(i+1) at i = {i}")));
    }
    let up = wrap(x + 1, m);
    let down = wrap(x - 1, m);
    let swap = |set: &[usize], out: usize| -> Result<Vec<usize>> {
        if !set.contains(&out) || set.contains(&i) {
            return Err(Error::Inconsistent(format!("necklace entry {set:?} does not allow the exchange at {i}")));
        }
        let mut s: Vec<usize> = set.iter().map(|&v| if v == out { i } else { v }).collect();
        s.sort_unstable();
        Ok(s)
    };
    let big_i = grassmann_necklace(&f).get(up).to_vec();
    let big_j = dual_necklace(&f).get(i).to_vec();
    let i_prime = swap(&big_i, up)?;
    let j_prime = swap(&big_j, down)?;
    if p.get(&big_i) != p.get(&big_j) || p.get(&i_prime) != p.get(&j_prime) {
        return Err(Error::Inconsistent(format!("coordinates at the exchange pair for i = {i} disagree; point is not in X")));
    }
    let den = p.get(&i_prime);
    if den.is_zero() {
        return Err(Error::Inconsistent(format!("reduction scalar at i = {i} has zero denominator")));
    }
    let a = p.get(&big_i) / den;
    let next = apply_u(p, i, &-a.clone())?;
    let want = conjugate_step(&f, i)?;
    let got = perm_of_point(&next)?;
    if got != want {
        return Err(Error::Inconsistent(format!("reduced point lies in {got}, expected {want}")));
    }
    Ok((next, a))
}

/// Drops positions `i, i+1` by restricting to subsets through `i+1`. Labels are shifted so
/// that parity is kept; when `i = 2n` the shift is cyclic.
pub fn project_fixed_point(p: &PluckerVector, i: usize) -> Result<PluckerVector> {
    let n = size_of(p)?;
    let m = 2 * n;
    if n < 2 || i == 0 || i > m {
        return Err(invalid(format!("cannot project position {i} of a point with n = {n}")));
    }
    let f = perm_of_point(p)?;
    let x = i as i64;
    if f.eval(x) != x || f.eval(x + 1) != x + m as i64 - 1 {
        return Err(invalid(format!("{f} does not have the fixed-point shape at {i}")));
    }
    let next = wrap(x + 1, m);
    let wraps = i == m;
    let old = |y: usize| -> usize {
        if wraps {
            if y == m - 2 {
                2
            } else {
                y + 2
            }
        } else if y < i {
            y
        } else {
            y + 2
        }
    };
    let mut out = PluckerVector::zero(m - 2, n - 2);
    for (r, j) in k_subsets(m - 2, n - 2).into_iter().enumerate() {
        let mut s: Vec<usize> = j.iter().map(|&y| old(y)).collect();
        s.push(next);
        s.sort_unstable();
        out.coords[r] = p.get(&s).clone();
    }
    Ok(out)
}

fn relabel(net: &CactusNetwork, n: usize, map: impl Fn(usize) -> usize, shape: Vec<Vec<usize>>) -> Result<CactusNetwork> {
    let mut bar_rotation = vec![Vec::new(); n];
    for (p, list) in net.bar_rotation.iter().enumerate() {
        bar_rotation[map(p + 1) - 1] = list.clone();
    }
    let bar = |v: &Vertex| match *v {
        Vertex::Bar(p) => Vertex::Bar(map(p)),
        ref other => other.clone(),
    };
    let edges = net.edges.iter().map(|e| Edge { u: bar(&e.u), v: bar(&e.v), w: e.w.clone() }).collect();
    Ok(CactusNetwork {
        n,
        shape: NCPartition::new(n, shape)?,
        interior: net.interior,
        edges,
        bar_rotation,
        inner_rotation: net.inner_rotation.clone(),
    })
}

/// Adds an isolated boundary vertex that becomes `b_k`.
pub fn insert_isolated(net: &CactusNetwork, k: usize) -> Result<CactusNetwork> {
    if k == 0 || k > net.n + 1 {
        return Err(invalid(format!("position {k} outside 1..={}", net.n + 1)));
    }
    let shift = |p: usize| if p >= k { p + 1 } else { p };
    let mut shape: Vec<Vec<usize>> = net.shape.parts().iter().map(|part| part.iter().map(|&p| shift(p)).collect()).collect();
    shape.push(vec![k]);
    relabel(net, net.n + 1, shift, shape)
}

/// Adds `b_{k+1}` glued to `b_k` so that the petal between them is empty.
pub fn insert_glued_after(net: &CactusNetwork, k: usize) -> Result<CactusNetwork> {
    if k == 0 || k > net.n {
        return Err(invalid(format!("position {k} outside 1..={}", net.n)));
    }
    // the old b_k becomes b_{k+1} and keeps its petal; the new b_k gets the empty one
    let shift = |p: usize| if p >= k { p + 1 } else { p };
    let mut shape: Vec<Vec<usize>> = net.shape.parts().iter().map(|part| part.iter().map(|&p| shift(p)).collect()).collect();
    for part in &mut shape {
        if part.contains(&(k + 1)) {
            part.push(k);
        }
    }
    relabel(net, net.n + 1, shift, shape)
}

/// Cyclic relabelling `b_p ↦ b_{p+1}`.
pub fn rotate_bars(net: &CactusNetwork) -> Result<CactusNetwork> {
    let n = net.n;
    let next = |p: usize| p % n + 1;
    let shape = net.shape.parts().iter().map(|part| part.iter().map(|&p| next(p)).collect()).collect();
    relabel(net, n, next, shape)
}

/// A cactus network whose image is `p`, built by the fixed-point and reduction recursion.
pub fn network_from_point(p: &PluckerVector) -> Result<CactusNetwork> {
    size_of(p)?;
    if !classify_point(&Point::Plucker(p.clone()))?.in_x_nonneg {
        return Err(Error::NotInImage("point is not in the nonnegative part of X".into()));
    }
    let net = realize_rec(p)?;
    let image = embed(&net.grove_vector());
    if !image.projectively_equal(p) {
        return Err(Error::Inconsistent("reconstructed network does not reproduce the point".into()));
    }
    let (x, y) = p.coords.iter().zip(&image.coords).find(|(x, _)| !x.is_zero()).expect("nonzero point");
    let scale = x / y;
    if scale.is_one() {
        return Ok(net);
    }
    let net = attach_leaf(&net, scale);
    debug_assert_eq!(&embed(&net.grove_vector()), p);
    Ok(net)
}

/// Hangs a new interior leaf off `b_1`; every grove uses its edge, so `L` scales by `w`.
pub fn attach_leaf(net: &CactusNetwork, w: Q) -> CactusNetwork {
    let mut out = net.clone();
    let e = out.edges.len();
    out.edges.push(Edge { u: Vertex::Bar(1), v: Vertex::Inner(out.interior), w });
    out.bar_rotation[0].push(e);
    out.inner_rotation.push(vec![e]);
    out.interior += 1;
    out
}

fn realize_rec(p: &PluckerVector) -> Result<CactusNetwork> {
    let n = size_of(p)?;
    if n == 1 {
        return Ok(CactusNetwork::hollow(NCPartition::singletons(1)));
    }
    let m = 2 * n;
    let f = perm_of_point(p)?;
    if !is_electrical(&f) {
        return Err(Error::Inconsistent(format!("point lies in the non-electrical stratum {f}")));
    }
    if let Some(i) = (1..=m).find(|&i| f.eval(i as i64) == i as i64) {
        let inner = realize_rec(&project_fixed_point(p, i)?)?;
        let k = i.div_ceil(2);
        return if i % 2 == 1 {
            insert_isolated(&inner, k)
        } else if k < n {
            insert_glued_after(&inner, k)
        } else {
            rotate_bars(&insert_glued_after(&inner, n - 1)?)
        };
    }
    let Some(i) = reducible_index(&f) else {
        return Err(Error::Inconsistent(format!("{f} has no fixed point and no index with i < f(i) < f(i+1)")));
    };
    let (next, a) = reduce_step(p, i)?;
    let after = perm_of_point(&next)?;
    assert!(length(&after) > length(&f), "reduction did not move to a smaller cell");
    realize_rec(&next)?.apply_generator(i, &a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{enumerate_nc, matching_of_partition};
    use crate::grassmann::apply_u;
    use crate::medial::medial_pairing;
    use crate::network::{example_network, y_network, GroveVector};
    use crate::rat::{frac, q};

    fn image(net: &CactusNetwork) -> PluckerVector {
        embed(&net.grove_vector())
    }

    #[test]
    fn generators_act_as_u() {
        let base = example_network();
        let x = image(&base);
        for i in 1..=10 {
            let t = frac(2, 3);
            let moved = image(&base.apply_generator(i, &t).unwrap());
            assert!(moved.projectively_equal(&apply_u(&x, i, &t).unwrap()), "i = {i}");
        }
    }

    #[test]
    fn strata() {
        let tau = Matching::parse("(1,7)(2,9)(3,8)(4,10)(5,6)").unwrap();
        assert_eq!(stratum_of_point(&image(&example_network())).unwrap(), tau);
        for sigma in enumerate_nc(4).unwrap() {
            let p = embed(&GroveVector::indicator(&sigma));
            assert_eq!(stratum_of_point(&p).unwrap(), matching_of_partition(&sigma));
        }
        let top = stratum_of_point(&embed(&y_network(q(1), q(1), q(1)).grove_vector())).unwrap();
        assert_eq!(top, Matching::top(3));
    }

    #[test]
    fn reduce_inverts_a_generator() {
        let hollow = CactusNetwork::hollow(NCPartition::singletons(3));
        let with_edge = hollow.apply_generator(2, &frac(5, 2)).unwrap();
        let p = image(&with_edge);
        let f = perm_of_point(&p).unwrap();
        assert_eq!(reducible_index(&f), Some(1));
        let (back, a) = reduce_step(&p, 2).unwrap();
        assert_eq!(a, frac(5, 2));
        assert!(back.projectively_equal(&image(&hollow)));
        assert!(length(&perm_of_point(&back).unwrap()) > length(&f));
    }

    #[test]
    fn reduce_scalar_is_defined_on_the_corpus() {
        for net in [example_network(), y_network(q(2), q(3), q(5))] {
            let mut p = image(&net);
            loop {
                let f = perm_of_point(&p).unwrap();
                if (1..=f.period()).any(|i| f.eval(i as i64) == i as i64) {
                    break;
                }
                let i = reducible_index(&f).unwrap();
                let (next, a) = reduce_step(&p, i).unwrap();
                assert!(a > q(0));
                assert!(next.is_nonnegative());
                p = next;
            }
        }
    }

    #[test]
    fn projection_deletes_an_isolated_vertex() {
        let small = y_network(q(2), q(3), q(5));
        for k in 1..=4 {
            let big = insert_isolated(&small, k).unwrap();
            big.validate().unwrap();
            assert_eq!(project_fixed_point(&image(&big), 2 * k - 1).unwrap(), image(&small), "k = {k}");
        }
        let two = CactusNetwork::hollow(NCPartition::singletons(2));
        let y = project_fixed_point(&image(&two), 1).unwrap();
        assert_eq!((y.m, y.k), (2, 0));
        assert_eq!(y.coords, vec![q(1)]);
    }

    #[test]
    fn projection_deletes_a_glued_vertex() {
        let small = example_network();
        for k in 1..=4 {
            let big = insert_glued_after(&small, k).unwrap();
            big.validate().unwrap();
            assert_eq!(project_fixed_point(&image(&big), 2 * k).unwrap(), image(&small), "k = {k}");
        }
        let big = rotate_bars(&insert_glued_after(&small, 5).unwrap()).unwrap();
        big.validate().unwrap();
        assert!(big.shape.same_part(1, 6));
        assert_eq!(project_fixed_point(&image(&big), 12).unwrap(), image(&small));
    }

    #[test]
    fn round_trip_networks() {
        let nets = vec![
            example_network(),
            y_network(q(2), q(3), q(5)),
            CactusNetwork::hollow(NCPartition::parse("1 2 4|3|5").unwrap()),
            insert_isolated(&y_network(q(1), q(4), frac(1, 2)), 2).unwrap(),
            rotate_bars(&insert_glued_after(&y_network(q(1), q(1), q(2)), 3).unwrap()).unwrap(),
        ];
        for net in nets {
            let p = image(&net);
            let back = network_from_point(&p).unwrap();
            assert_eq!(back.grove_vector(), net.grove_vector());
            assert_eq!(medial_pairing(&back).tau, stratum_of_point(&p).unwrap());
        }
    }

    #[test]
    fn bottom_cells_give_hollow_cacti() {
        for sigma in enumerate_nc(4).unwrap() {
            let back = network_from_point(&embed(&GroveVector::indicator(&sigma))).unwrap();
            assert_eq!(back, CactusNetwork::hollow(sigma.clone()));
        }
    }

    #[test]
    fn leaf_rescales_exactly() {
        let y = y_network(q(2), q(3), q(5));
        let leafy = attach_leaf(&y, frac(7, 4));
        leafy.validate().unwrap();
        let mut scaled = y.grove_vector();
        scaled.coords.iter_mut().for_each(|x| *x *= frac(7, 4));
        assert_eq!(leafy.grove_vector(), scaled);
        let p = image(&leafy);
        assert_eq!(image(&network_from_point(&p).unwrap()), p);
        assert_eq!(image(&network_from_point(&p.normalized()).unwrap()), p.normalized());
    }

    #[test]
    fn y_point_gives_equivalent_network() {
        let y = y_network(q(2), q(3), q(5));
        let back = network_from_point(&image(&y)).unwrap();
        assert_eq!(back.edges.len(), 3);
        assert_eq!(back.response_matrix(), y.response_matrix());
    }

    #[test]
    fn rejects_points_outside_x() {
        let mut p = image(&y_network(q(1), q(1), q(1)));
        p.coords[0] = -p.coords[0].clone();
        assert!(network_from_point(&p).is_err());
        assert!(project_fixed_point(&image(&example_network()), 1).is_err());
    }
}
