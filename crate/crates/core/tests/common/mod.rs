#![allow(dead_code)]

use std::collections::BTreeMap;

use gaugedim::{build_graph, Graph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random acyclic multigraph with `1..=max_v` vertices and up to `max_e`
/// edges; labels are shuffled so vertex order is not topological.
pub fn random_acyclic(seed: u64, max_v: usize, max_e: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_v);
    let mut labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    labels.shuffle(&mut rng);
    let m = if n == 1 { 0 } else { rng.gen_range(0..=max_e) };
    let edges = (0..m)
        .map(|e| {
            let a = rng.gen_range(0..n - 1);
            let b = rng.gen_range(a + 1..n);
            (format!("e{e}"), labels[a].clone(), labels[b].clone())
        })
        .collect();
    let mut vertices = labels.clone();
    vertices.sort();
    build_graph(format!("dag{seed}"), vertices, edges).unwrap()
}

/// Random multigraph, loops and cycles allowed.
pub fn random_graph(seed: u64, max_v: usize, max_e: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_v);
    let m = rng.gen_range(0..=max_e);
    let edges = (0..m)
        .map(|e| {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            (format!("e{e}"), format!("v{a}"), format!("v{b}"))
        })
        .collect();
    build_graph(format!("g{seed}"), (0..n).map(|i| format!("v{i}")).collect(), edges).unwrap()
}

/// Lengths of all paths ending at `sink`, by explicit enumeration.
pub fn enumerate_path_lengths(g: &Graph, sink: usize) -> BTreeMap<usize, u64> {
    fn walk(g: &Graph, v: usize, len: usize, out: &mut BTreeMap<usize, u64>) {
        *out.entry(len).or_default() += 1;
        for e in g.edges().iter().filter(|e| e.range == v) {
            walk(g, e.source, len + 1, out);
        }
    }
    let mut out = BTreeMap::new();
    walk(g, sink, 0, &mut out);
    out
}

pub fn residues(lengths: &BTreeMap<usize, u64>, k: usize) -> Vec<u64> {
    let mut r = vec![0; k];
    for (&l, &c) in lengths {
        r[l % k] += c;
    }
    r
}

/// Optimal per-range cap over every edge subset satisfying the cover
/// condition, by exhaustive enumeration.
pub fn brute_force_family_cap(g: &Graph) -> Option<usize> {
    let m = g.edge_count();
    assert!(m <= 16);
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << m) {
        let sel = |e: usize| mask >> e & 1 == 1;
        let ok = (0..n).all(|v| {
            let by_range = g.edges().iter().enumerate().any(|(e, x)| x.range == v && sel(e));
            let outs: Vec<usize> = (0..m).filter(|&e| g.edges()[e].source == v).collect();
            by_range || (!outs.is_empty() && outs.iter().all(|&e| sel(e)))
        });
        if !ok {
            continue;
        }
        let mut count = vec![0usize; n];
        for e in (0..m).filter(|&e| sel(e)) {
            count[g.edges()[e].range] += 1;
        }
        let t = count.into_iter().max().unwrap_or(0);
        best = Some(best.map_or(t, |b| b.min(t)));
    }
    best
}

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Solves a square system by Gauss-Jordan elimination; `None` if singular.
fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = a[col][col].clone().recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

/// Feasibility of `x >= 0, a x = b` by enumerating basic solutions: if
/// the system is feasible, some vertex of the polyhedron is supported on
/// linearly independent columns, found by trying every column subset and
/// every matching row subset of the same size.
pub fn basic_solution_feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let check = |x: &[BigRational]| {
        x.iter().all(|v| !v.is_negative())
            && a.iter().zip(b).all(|(row, bi)| {
                let s: BigRational = row.iter().zip(x).map(|(r, v)| r * v).sum();
                &s == bi
            })
    };
    if check(&vec![BigRational::zero(); n]) {
        return true;
    }
    for cols in 1u32..(1 << n) {
        let cs: Vec<usize> = (0..n).filter(|&j| cols >> j & 1 == 1).collect();
        let r = cs.len();
        if r > m {
            continue;
        }
        for rows in 1u32..(1 << m) {
            if rows.count_ones() as usize != r {
                continue;
            }
            let rs: Vec<usize> = (0..m).filter(|&i| rows >> i & 1 == 1).collect();
            let sub: Vec<Vec<BigRational>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect()).collect();
            let rhs: Vec<BigRational> = rs.iter().map(|&i| b[i].clone()).collect();
            if let Some(sol) = solve_square(sub, rhs) {
                let mut x = vec![BigRational::zero(); n];
                for (&j, v) in cs.iter().zip(sol) {
                    x[j] = v;
                }
                if check(&x) {
                    return true;
                }
            }
        }
    }
    false
}

/// Row-combination system of `I + A` restricted to `support`.
pub fn chi_system(g: &Graph, support: &[usize]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let adj = g.adjacency();
    let a = (0..g.vertex_count())
        .map(|w| {
            support
                .iter()
                .map(|&v| rat(adj.get(v, w) as i64 + i64::from(v == w)))
                .collect()
        })
        .collect();
    (a, vec![BigRational::one(); g.vertex_count()])
}
