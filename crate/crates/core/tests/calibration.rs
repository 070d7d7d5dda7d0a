//! Simulations used to pick the thresholds frozen in the acceptance suite.
//!
//! The depth oracle shares no code with the library: levels come from
//! `rand_distr`'s geometric distribution and tree shape is derived from the
//! level array with a Cartesian-tree pass. The step survey counts steps on
//! library trees, on seeds disjoint from the acceptance seeds.
//!
//! Run with `cargo test --test calibration -- --ignored --nocapture`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;

/// Leaf depths of the canonical tree over `levels` (levels[k] separates
/// leaves k and k+1). Root is the leftmost maximum.
fn leaf_depths(levels: &[u32]) -> Vec<usize> {
    let m = levels.len();
    let n = m + 1;
    if m == 0 {
        return vec![0];
    }
    let mut parent = vec![usize::MAX; m];
    let mut stack: Vec<usize> = Vec::new();
    for i in 0..m {
        let mut last = None;
        while let Some(&top) = stack.last() {
            if levels[top] >= levels[i] {
                break;
            }
            last = stack.pop();
        }
        if let Some(l) = last {
            parent[l] = i;
        }
        if let Some(&top) = stack.last() {
            parent[i] = top;
        }
        stack.push(i);
    }
    let mut depth = vec![usize::MAX; m];
    for i in 0..m {
        let mut chain = vec![];
        let mut cur = i;
        while depth[cur] == usize::MAX {
            chain.push(cur);
            if parent[cur] == usize::MAX {
                break;
            }
            cur = parent[cur];
        }
        // Either we stopped at a node of known depth or at the root.
        let mut d = if depth[cur] == usize::MAX {
            0
        } else {
            depth[cur] + 1
        };
        for &c in chain.iter().rev() {
            depth[c] = d;
            d += 1;
        }
    }
    (0..n)
        .map(|j| {
            let left = if j >= 1 { depth[j - 1] } else { 0 };
            let right = if j < m { depth[j] } else { 0 };
            left.max(right) + 1
        })
        .collect()
}

fn trial(n: usize, seed: u64) -> (f64, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let geo = Geometric::new(0.5).unwrap();
    let levels: Vec<u32> = (1..n).map(|_| geo.sample(&mut rng) as u32 + 1).collect();
    let depths = leaf_depths(&levels);
    let mean = depths.iter().sum::<usize>() as f64 / depths.len() as f64;
    (mean, *depths.iter().max().unwrap())
}

#[test]
fn oracle_matches_hand_example() {
    // z 4 a 6 b 1 c 2 y 5 d 3 e
    assert_eq!(leaf_depths(&[4, 6, 1, 2, 5, 3]), vec![2, 2, 4, 4, 3, 3, 3]);
    assert_eq!(leaf_depths(&[2, 2, 2]), vec![1, 2, 3, 3]);
}

#[test]
#[ignore]
fn depth_simulation() {
    for &n in &[1usize << 8, 1 << 16] {
        let results: Vec<(f64, usize)> =
            (0..1000u64).into_par_iter().map(|s| trial(n, s)).collect();
        let mut means: Vec<f64> = results.iter().map(|r| r.0).collect();
        let mut maxes: Vec<usize> = results.iter().map(|r| r.1).collect();
        means.sort_by(|a, b| a.partial_cmp(b).unwrap());
        maxes.sort();
        let avg = means.iter().sum::<f64>() / means.len() as f64;
        println!(
            "n={n} mean-of-means={avg:.3} mean p50={:.3} p99={:.3} max={:.3} | max-depth p50={} p99={} max={}",
            means[500], means[990], means[999], maxes[500], maxes[990], maxes[999]
        );
    }
}

/// Per tree: focus/depth, unfocus/depth, mean first trim, max first trim,
/// walk/(k log2 n), depth.
type Row = (f64, f64, f64, u64, f64, f64);

#[test]
#[ignore]
fn step_survey() {
    use raz::checker::{first_trim_steps, focus_unfocus_steps, move_walk_steps};
    use raz::{Dir, LevelSource, Tree};

    let n = 1usize << 16;
    let log2n = (n as f64).log2();
    let rows: Vec<Row> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let seed = 1_000_000 + i;
            let t = Tree::from_elements(0..n as u32, &mut LevelSource::seeded(seed)).unwrap();
            let depth = t.max_depth() as f64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut f_ratio, mut u_ratio, mut trim_sum, mut trim_max) = (0f64, 0f64, 0u64, 0u64);
            let mut walk_max = 0f64;
            for _ in 0..64 {
                let p = rng.random_range(0..n);
                let (f, u) = focus_unfocus_steps(&t, p).unwrap();
                f_ratio = f_ratio.max(f.descents as f64 / depth);
                u_ratio = u_ratio.max((u.appends + u.grows) as f64 / depth);
                let z = t.focus(p).unwrap();
                for d in [Dir::L, Dir::R] {
                    if !z.side(d).is_empty() {
                        let s = first_trim_steps(&z, d).unwrap().total();
                        trim_sum += s;
                        trim_max = trim_max.max(s);
                    }
                }
                let (k, s) = move_walk_steps(&t, p, Dir::R, 1000).unwrap();
                if k == 1000 {
                    walk_max = walk_max.max(s.total() as f64 / (k as f64 * log2n));
                }
            }
            (
                f_ratio,
                u_ratio,
                trim_sum as f64 / 128.0,
                trim_max,
                walk_max,
                depth,
            )
        })
        .collect();
    let max = |f: fn(&Row) -> f64| rows.iter().map(f).fold(0f64, f64::max);
    println!(
        "focus/depth max={:.3} unfocus/depth max={:.3} trim mean-per-tree max={:.3} trim max={} walk/(k log2 n) max={:.4} depth max={}",
        max(|r| r.0),
        max(|r| r.1),
        max(|r| r.2),
        rows.iter().map(|r| r.3).max().unwrap(),
        max(|r| r.4),
        max(|r| r.5),
    );
}
