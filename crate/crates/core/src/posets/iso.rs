use std::collections::{BTreeMap, VecDeque};

use super::poset::FinitePoset;
use crate::error::{Error, Result};

/// Largest poset accepted by [`poset_isomorphic`].
pub const MAX_ISO_ELEMENTS: usize = 5000;

// Joint color refinement on both Hasse diagrams so colors are comparable.
fn refine<A, B>(p: &FinitePoset<A>, q: &FinitePoset<B>) -> (Vec<usize>, Vec<usize>) {
    let n = p.len();
    let init = |r: usize, u: usize, d: usize| (r, u, d);
    let keys: Vec<(usize, usize, usize)> = (0..n)
        .map(|i| init(p.rank(i), p.up_covers(i).len(), p.down_covers(i).len()))
        .chain((0..q.len()).map(|i| init(q.rank(i), q.up_covers(i).len(), q.down_covers(i).len())))
        .collect();
    let mut colors = canon(&keys);
    let mut classes = count_distinct(&colors);
    loop {
        let sig = |c: &[usize], off: usize, ups: &[usize], downs: &[usize]| {
            let mut u: Vec<usize> = ups.iter().map(|&j| c[off + j]).collect();
            let mut d: Vec<usize> = downs.iter().map(|&j| c[off + j]).collect();
            u.sort_unstable();
            d.sort_unstable();
            (u, d)
        };
        let next_keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|i| {
                let (u, d) = sig(&colors, 0, p.up_covers(i), p.down_covers(i));
                (colors[i], u, d)
            })
            .chain((0..q.len()).map(|i| {
                let (u, d) = sig(&colors, n, q.up_covers(i), q.down_covers(i));
                (colors[n + i], u, d)
            }))
            .collect();
        let next = canon(&next_keys);
        let next_classes = count_distinct(&next);
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let qc = colors.split_off(n);
    (colors, qc)
}

fn canon<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut ids: BTreeMap<K, usize> = BTreeMap::new();
    for k in keys {
        let next = ids.len();
        ids.entry(k.clone()).or_insert(next);
    }
    // renumber by key order so the coloring does not depend on input order
    let order: BTreeMap<K, usize> = ids.keys().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    keys.iter().map(|k| order[k]).collect()
}

fn count_distinct(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Finds an order isomorphism `P -> Q` as a vector `f` with `f[p] = q`.
///
/// Colors elements by iterated (rank, cover-degree, neighbor-color) refinement,
/// then backtracks in breadth-first order so each new element is matched
/// against neighbors of already-placed images.
pub fn poset_isomorphic<A, B>(p: &FinitePoset<A>, q: &FinitePoset<B>) -> Result<Option<Vec<usize>>> {
    for n in [p.len(), q.len()] {
        if n > MAX_ISO_ELEMENTS {
            return Err(Error::TooLarge(format!("poset of {n} elements exceeds {MAX_ISO_ELEMENTS}")));
        }
    }
    let n = p.len();
    if n != q.len() || p.covers().len() != q.covers().len() {
        return Ok(None);
    }
    let (pc, qc) = refine(p, q);
    let mut hp = pc.clone();
    let mut hq = qc.clone();
    hp.sort_unstable();
    hq.sort_unstable();
    if hp != hq {
        return Ok(None);
    }

    // BFS order over the undirected Hasse graph
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut class_size = vec![0usize; n + q.len() + 1];
    for &c in &pc {
        class_size[c] += 1;
    }
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&i| (class_size[pc[i]], i));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in p.up_covers(x).iter().chain(p.down_covers(x)) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(p, q, &pc, &qc, &order, 0, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn assign<A, B>(
    p: &FinitePoset<A>,
    q: &FinitePoset<B>,
    pc: &[usize],
    qc: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else { return true };
    let placed_up: Vec<usize> =
        p.up_covers(x).iter().copied().filter(|&y| map[y] != usize::MAX).collect();
    let placed_down: Vec<usize> =
        p.down_covers(x).iter().copied().filter(|&y| map[y] != usize::MAX).collect();
    let candidates: Vec<usize> = if let Some(&y) = placed_up.first() {
        q.down_covers(map[y]).to_vec()
    } else if let Some(&y) = placed_down.first() {
        q.up_covers(map[y]).to_vec()
    } else {
        (0..q.len()).collect()
    };
    for c in candidates {
        if used[c] || qc[c] != pc[x] {
            continue;
        }
        let ok = placed_up.iter().all(|&y| q.up_covers(c).contains(&map[y]))
            && placed_down.iter().all(|&y| q.down_covers(c).contains(&map[y]));
        if !ok {
            continue;
        }
        map[x] = c;
        used[c] = true;
        if assign(p, q, pc, qc, order, depth + 1, map, used) {
            return true;
        }
        map[x] = usize::MAX;
        used[c] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean(n: usize) -> FinitePoset<usize> {
        FinitePoset::from_leq((0..1 << n).collect(), |a, b| a & b == a).unwrap()
    }

    #[test]
    fn boolean_lattice_relabeled() {
        let p = boolean(3);
        let perm = [5usize, 2, 7, 0, 3, 6, 1, 4];
        let q = FinitePoset::from_leq(perm.to_vec(), |a, b| p.leq(perm[a], perm[b])).unwrap();
        let f = poset_isomorphic(&p, &q).unwrap().unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(p.leq(a, b), q.leq(f[a], f[b]));
            }
        }
    }

    #[test]
    fn chain_vs_antichain() {
        let c = FinitePoset::from_leq(vec![0, 1], |a, b| a <= b).unwrap();
        let a = FinitePoset::from_leq(vec![0, 1], |a, b| a == b).unwrap();
        assert!(poset_isomorphic(&c, &a).unwrap().is_none());
    }

    #[test]
    fn same_counts_different_shape() {
        // N poset vs a 4-element zigzag with the same cover count
        let n = FinitePoset::from_leq(vec![0, 1, 2, 3], |a, b| {
            a == b || matches!((a, b), (0, 2) | (1, 2) | (1, 3))
        })
        .unwrap();
        let v = FinitePoset::from_leq(vec![0, 1, 2, 3], |a, b| {
            a == b || matches!((a, b), (0, 1) | (0, 2) | (0, 3))
        })
        .unwrap();
        assert!(poset_isomorphic(&n, &v).unwrap().is_none());
    }
}
