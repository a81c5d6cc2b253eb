//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use gdh::enumerate::{QueryMode, SphereQuery};
use gdh::exactlat::{rat, ExactLattice, Rational};
use num_traits::ToPrimitive;
use rand::Rng;

/// A random lattice with small integer basis rows, plus the rows themselves.
pub struct RandomLattice {
    pub rows: Vec<Vec<i64>>,
    pub scale: (i64, i64),
    pub lattice: ExactLattice,
}

/// Rank `1..=6`, ambient dimension rank or rank + 1, rows with entries in
/// `-3..=3`; resampled until the Gram matrix is well enough conditioned for
/// a brute-force box to stay small.
pub fn random_lattice<R: Rng>(rng: &mut R) -> RandomLattice {
    loop {
        let rank = rng.gen_range(1..=6);
        let ambient = rank + rng.gen_range(0..=1);
        let rows: Vec<Vec<i64>> = (0..rank).map(|_| (0..ambient).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let scale = [(1, 1), (1, 2), (2, 1), (1, 3)][rng.gen_range(0..4)];
        let Ok(lattice) = ExactLattice::from_integer_rows(&rows, rat(scale.0, scale.1)) else { continue };
        if gram_inverse_diag(&rows, scale).is_some_and(|d| d.iter().all(|&x| x < 4.0)) {
            return RandomLattice { rows, scale, lattice };
        }
    }
}

fn gram(rows: &[Vec<i64>], scale: (i64, i64)) -> Vec<Vec<f64>> {
    let s = scale.0 as f64 / scale.1 as f64;
    rows.iter().map(|a| rows.iter().map(|b| s * a.iter().zip(b).map(|(x, y)| (x * y) as f64).sum::<f64>()).collect()).collect()
}

/// Gauss–Jordan inverse in floating point; only used to size the search box.
fn inverse_f64(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.iter().enumerate().map(|(i, r)| r.iter().copied().chain((0..n).map(|j| (i == j) as u8 as f64)).collect()).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))?;
        if a[p][c].abs() < 1e-9 {
            return None;
        }
        a.swap(c, p);
        let piv = a[c][c];
        a[c].iter_mut().for_each(|x| *x /= piv);
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                let row = a[c].clone();
                a[r].iter_mut().zip(row).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn gram_inverse_diag(rows: &[Vec<i64>], scale: (i64, i64)) -> Option<Vec<f64>> {
    inverse_f64(&gram(rows, scale)).map(|g| (0..rows.len()).map(|i| g[i][i]).collect())
}

/// Coefficient box around the projection of the target.
fn search_box(rl: &RandomLattice, q: &SphereQuery) -> Vec<(i64, i64)> {
    let rank = rl.rows.len();
    let ginv = inverse_f64(&gram(&rl.rows, rl.scale)).expect("nondegenerate");
    let s = rl.scale.0 as f64 / rl.scale.1 as f64;
    let t: Vec<f64> = q.target.iter().map(|x| x.to_f64().unwrap()).collect();
    let bt: Vec<f64> = rl.rows.iter().map(|r| s * r.iter().zip(&t).map(|(a, b)| *a as f64 * b).sum::<f64>()).collect();
    let centre: Vec<f64> = (0..rank).map(|i| (0..rank).map(|j| ginv[i][j] * bt[j]).sum()).collect();
    let r = q.radius_sq.to_f64().unwrap();
    (0..rank)
        .map(|i| {
            let w = (r * ginv[i][i]).max(0.0).sqrt();
            ((centre[i] - w).floor() as i64 - 1, (centre[i] + w).ceil() as i64 + 1)
        })
        .collect()
}

/// All coefficient vectors `c` with `|c·B − t|²` on the shell or in the ball,
/// found by scanning a box around the projection of `t`.
pub fn brute_force(rl: &RandomLattice, q: &SphereQuery) -> Vec<Vec<i64>> {
    let rank = rl.rows.len();
    let ambient = rl.rows[0].len();
    let bounds = search_box(rl, q);

    // exact test: scale·Σ(D·v − D·t)² compared with R·D² in integers
    let den: i64 = q.target.iter().map(|x| x.denom().to_i64().unwrap()).fold(1, num_integer::lcm);
    let tn: Vec<i128> = q.target.iter().map(|x| (x * Rational::from_integer(den.into())).to_integer().to_i128().unwrap()).collect();
    let (rn, rd) = (q.radius_sq.numer().to_i128().unwrap(), q.radius_sq.denom().to_i128().unwrap());
    let lhs_k = rl.scale.0 as i128 * rd;
    let rhs = rn * rl.scale.1 as i128 * (den as i128).pow(2);

    let mut out = Vec::new();
    let mut c: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        let mut sq: i128 = 0;
        for k in 0..ambient {
            let v: i128 = (0..rank).map(|i| (c[i] * rl.rows[i][k]) as i128).sum::<i128>() * den as i128 - tn[k];
            sq += v * v;
        }
        let hit = match q.mode {
            QueryMode::ExactShell => sq * lhs_k == rhs,
            QueryMode::Ball => sq * lhs_k <= rhs,
        };
        if hit {
            out.push(c.clone());
        }
        let mut i = 0;
        loop {
            if i == rank {
                return out;
            }
            c[i] += 1;
            if c[i] <= bounds[i].1 {
                break;
            }
            c[i] = bounds[i].0;
            i += 1;
        }
    }
}

/// Largest brute-force box [`random_query`] will produce.
pub const MAX_BOX: u64 = 200_000;

/// A target with small denominators near the lattice and a radius that is
/// attained by some lattice vector, resampled until the brute-force box has
/// at most [`MAX_BOX`] points.
pub fn random_query<R: Rng>(rng: &mut R, rl: &RandomLattice, mode: QueryMode) -> SphereQuery {
    loop {
        let q = candidate_query(rng, rl, mode);
        let size = search_box(rl, &q).iter().map(|(a, b)| (b - a + 1) as u64).product::<u64>();
        if size <= MAX_BOX {
            return q;
        }
    }
}

fn candidate_query<R: Rng>(rng: &mut R, rl: &RandomLattice, mode: QueryMode) -> SphereQuery {
    let ambient = rl.rows[0].len();
    let d = [1, 2, 3, 4, 6][rng.gen_range(0..5)];
    let target: Vec<Rational> = (0..ambient).map(|_| rat(rng.gen_range(-2 * d..=2 * d), d)).collect();
    let c: Vec<i64> = (0..rl.rows.len()).map(|_| rng.gen_range(-1..=1)).collect();
    let v = rl.lattice.vector(&c);
    let diff: Vec<Rational> = v.iter().zip(&target).map(|(a, b)| a - b).collect();
    let mut radius_sq = rl.lattice.norm(&diff);
    if mode == QueryMode::Ball {
        radius_sq += rat(rng.gen_range(0..=4), 2);
    }
    SphereQuery { target, radius_sq, mode }
}

/// `min |z − 2n·r|²` over `r ∈ ℤ¹²` with `Σr` even (nearest point of 2n·D12).
fn d12_decode(z: &[i64], n: i64) -> i128 {
    let m = 2 * n;
    let mut r: Vec<i64> = z.iter().map(|&x| (2 * x + m).div_euclid(2 * m)).collect();
    let mut e: Vec<i64> = z.iter().zip(&r).map(|(&x, &ri)| x - m * ri).collect();
    if r.iter().sum::<i64>().rem_euclid(2) == 1 {
        let i = (0..z.len()).max_by_key(|&i| e[i].abs()).unwrap();
        let s = if e[i] >= 0 { 1 } else { -1 };
        r[i] += s;
        e[i] -= m * s;
    }
    e.iter().map(|&x| (x as i128).pow(2)).sum()
}

/// `min_{x ∈ D12+} |z/(2n) − x|²`, scaled by `4n²`. Conway–Sloane decoding
/// of both cosets of D12 in D12+.
pub fn d12plus_min_scaled(z: &[i64], n: i64) -> i128 {
    let shifted: Vec<i64> = z.iter().map(|&x| x - n).collect();
    d12_decode(z, n).min(d12_decode(&shifted, n))
}

/// Whether `h` meets `min_{x ∈ D12+} |(4k+1)h/n − x|² = 1` for `k = 0..11`.
pub fn d12_close_vector_condition(h: &[i64], n: i64) -> bool {
    (0..12).all(|k| {
        let z: Vec<i64> = h.iter().map(|&x| 2 * (4 * k + 1) * x).collect();
        d12plus_min_scaled(&z, n) == 4 * (n as i128).pow(2)
    })
}

/// Nonincreasing 12-tuples of nonnegative integers of a single parity with
/// square sum `n²` and the two largest entries summing below `n` (or at
/// most `n`), by direct recursion from the largest entry down.
pub fn d12_classes(n: i64, strict: bool) -> Vec<Vec<i64>> {
    fn go(n: i64, strict: bool, max: i64, rem: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == 12 {
            if rem == 0 {
                let mut v = cur.clone();
                v.reverse();
                out.push(v);
            }
            return;
        }
        let mut x = max;
        while x >= 0 {
            let ok_pair = match cur.first() {
                Some(&a) if cur.len() == 1 => if strict { a + x < n } else { a + x <= n },
                _ => true,
            };
            if ok_pair && x * x <= rem && x * x * (12 - cur.len() as i64) >= rem {
                cur.push(x);
                go(n, strict, x, rem - x * x, cur, out);
                cur.pop();
            }
            x -= 2;
        }
    }
    let mut out = Vec::new();
    for top in [n - n % 2, n - 1 + n % 2] {
        go(n, strict, top.max(0), n * n, &mut Vec::new(), &mut out);
    }
    out.sort();
    out.dedup();
    out
}
