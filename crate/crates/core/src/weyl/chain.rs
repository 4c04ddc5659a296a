//! Transversal chains of parabolic subgroups and the enumeration of W
//! as products of coset representatives.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{cartan_matrix, char_poly, simple_reflections, CharPolyHistogram, CharPolyVector, LieType, WeylMatrix};
use crate::error::{Error, Result};

/// Largest orbit we are willing to BFS. E8's biggest is 240.
const ORBIT_CAP: usize = 100_000;
/// Target size for the flattened innermost factor of the chain.
const INNER_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct Level {
    /// Simple reflections generating this level's parabolic subgroup.
    pub generators: Vec<usize>,
    /// The node dropped to get the next level down; its fundamental weight was orbited.
    pub removed: usize,
    pub reps: Vec<WeylMatrix>,
    /// det of each rep, +1 or -1.
    pub dets: Vec<i8>,
}

/// W = T_0 T_1 ... T_{k-1}, each element factoring uniquely.
#[derive(Clone, Debug)]
pub struct TransversalChain {
    pub lie_type: LieType,
    pub levels: Vec<Level>,
}

impl TransversalChain {
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.reps.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.reps.len() as u128).product()
    }

    /// The element with representative index `idx[l]` at each level.
    pub fn element(&self, idx: &[usize]) -> WeylMatrix {
        let r = self.lie_type.rank;
        self.levels.iter().zip(idx).fold(WeylMatrix::identity(r), |acc, (l, &i)| acc.mul(&l.reps[i]))
    }

    /// Every element, in chain order. Only for small groups.
    pub fn elements(&self) -> Vec<WeylMatrix> {
        let mut out = vec![WeylMatrix::identity(self.lie_type.rank)];
        for level in &self.levels {
            out = out.iter().flat_map(|p| level.reps.iter().map(move |t| p.mul(t))).collect();
        }
        out
    }
}

/// Strip off the highest-numbered node at each step and orbit its
/// fundamental weight under the current parabolic.
pub fn transversal_chain(t: LieType) -> Result<TransversalChain> {
    let cartan = cartan_matrix(t)?;
    let r = cartan.rank();
    let gens = simple_reflections(&cartan);
    let mut current: Vec<usize> = (0..r).collect();
    let mut levels = Vec::new();
    while let Some(&k) = current.iter().max() {
        let mut start = vec![0i64; r];
        start[k] = 1;
        let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut weights = vec![start];
        let mut reps = vec![WeylMatrix::identity(r)];
        let mut dets = vec![1i8];
        let mut head = 0;
        while head < weights.len() {
            for &i in &current {
                let lam = &weights[head];
                let li = lam[i];
                if li == 0 {
                    continue;
                }
                // s_i(lam) = lam - <lam, alpha_i^vee> alpha_i, alpha_i = column i of the Cartan matrix
                let next: Vec<i64> = (0..r).map(|j| lam[j] - li * cartan.entries[j][i]).collect();
                if index.contains_key(&next) {
                    continue;
                }
                if weights.len() >= ORBIT_CAP {
                    return Err(Error::ResourceExhausted(format!("orbit of weight {k} exceeds {ORBIT_CAP}")));
                }
                index.insert(next.clone(), weights.len());
                reps.push(gens[i].mul(&reps[head]));
                dets.push(-dets[head]);
                weights.push(next);
            }
            head += 1;
        }
        levels.push(Level { generators: current.clone(), removed: k, reps, dets });
        current.retain(|&i| i != k);
    }
    let chain = TransversalChain { lie_type: t, levels };
    if Some(chain.order()) != t.group_order().map(u128::from) {
        return Err(Error::Inconsistent(format!("chain for {t} has order {}", chain.order())));
    }
    Ok(chain)
}

type Mat<const N: usize> = [[i16; N]; N];

fn to_fixed<const N: usize>(w: &WeylMatrix) -> Result<Mat<N>> {
    let mut m = [[0i16; N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            // Root-basis entries are bounded by highest-root coefficients (<= 6).
            *x = i16::try_from(w.get(i, j))
                .ok()
                .filter(|v| v.abs() <= 16)
                .ok_or_else(|| Error::Inconsistent(format!("Weyl matrix entry {} out of range", w.get(i, j))))?;
        }
    }
    Ok(m)
}

#[inline(always)]
fn mat_mul<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut c = [[0i16; N]; N];
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            for j in 0..N {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// Layout of the dense count table indexed by (det, p_1, .., p_h), p_k = tr(w^k).
#[derive(Clone, Copy)]
struct KeySpace {
    rank: usize,
    half: usize,
    base: usize,
}

impl KeySpace {
    fn new(rank: usize) -> Self {
        KeySpace { rank, half: rank / 2, base: 2 * rank + 1 }
    }

    fn size(&self) -> usize {
        2 * self.base.pow(self.half as u32)
    }

    fn decode(&self, mut idx: usize) -> (i64, Vec<i64>) {
        let det = if idx % 2 == 0 { 1 } else { -1 };
        idx /= 2;
        let mut p = Vec::with_capacity(self.half);
        for _ in 0..self.half {
            p.push((idx % self.base) as i64 - self.rank as i64);
            idx /= self.base;
        }
        (det, p)
    }

    /// Rebuild c_0..c_r from det and power sums via Newton's identities and
    /// self-reciprocity c_k = c_0 c_{r-k}.
    fn char_poly(&self, det: i64, p: &[i64]) -> Result<CharPolyVector> {
        let (r, h) = (self.rank, self.half);
        let mut e = vec![0i64; h + 1];
        e[0] = 1;
        for k in 1..=h {
            let mut acc = 0i64;
            for i in 1..=k {
                let term = e[k - i] * p[i - 1];
                acc += if i % 2 == 1 { term } else { -term };
            }
            if acc % k as i64 != 0 {
                return Err(Error::Inconsistent(format!("power sums {p:?} give non-integral e_{k}")));
            }
            e[k] = acc / k as i64;
        }
        let mut c: Vec<Option<i64>> = vec![None; r + 1];
        for (k, &ek) in e.iter().enumerate() {
            c[r - k] = Some(if k % 2 == 0 { ek } else { -ek });
        }
        let c0 = if r % 2 == 0 { det } else { -det };
        for j in 0..=r {
            let mirrored = c[r - j].map(|v| c0 * v);
            match (c[j], mirrored) {
                (None, m) => c[j] = m,
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::Inconsistent(format!("power sums {p:?} with det {det} are not self-reciprocal")));
                }
                _ => {}
            }
        }
        let coeffs: Option<Vec<i64>> = c.into_iter().collect();
        coeffs.map(CharPolyVector::new).ok_or_else(|| Error::Inconsistent("underdetermined char poly".into()))
    }
}

#[inline(always)]
fn key_index<const N: usize>(m: &Mat<N>, det_odd: bool, ks: &KeySpace) -> usize {
    let h = N / 2;
    let mut p = [0i32; 4];
    let mut t1 = 0i32;
    for (i, row) in m.iter().enumerate() {
        t1 += row[i] as i32;
    }
    p[0] = t1;
    if h >= 2 {
        let m2 = mat_mul(m, m);
        let mut t2 = 0i32;
        for (i, row) in m2.iter().enumerate() {
            t2 += row[i] as i32;
        }
        p[1] = t2;
        if h >= 3 {
            let mut t3 = 0i32;
            for i in 0..N {
                for j in 0..N {
                    t3 += m2[i][j] as i32 * m[j][i] as i32;
                }
            }
            p[2] = t3;
        }
        if h >= 4 {
            let mut t4 = 0i32;
            for i in 0..N {
                for j in 0..N {
                    t4 += m2[i][j] as i32 * m2[j][i] as i32;
                }
            }
            p[3] = t4;
        }
    }
    let r = ks.rank as i32;
    let mut idx = 0usize;
    for k in (0..h).rev() {
        debug_assert!(p[k].abs() <= r);
        idx = idx * ks.base + (p[k] + r) as usize;
    }
    idx * 2 + det_odd as usize
}

struct Prepared<const N: usize> {
    outer: Vec<Vec<(Mat<N>, bool)>>,
    inner: Vec<(Mat<N>, bool)>,
}

fn prepare<const N: usize>(chain: &TransversalChain) -> Result<Prepared<N>> {
    let levels = &chain.levels;
    // Fold levels into the inner block from the bottom while it stays small.
    let mut split = levels.len();
    let mut inner_size = 1usize;
    while split > 0 && inner_size * levels[split - 1].reps.len() <= INNER_CAP {
        split -= 1;
        inner_size *= levels[split].reps.len();
    }
    let mut inner = vec![(WeylMatrix::identity(N), false)];
    for level in &levels[split..] {
        inner = inner
            .iter()
            .flat_map(|(p, d)| level.reps.iter().zip(&level.dets).map(move |(t, &dt)| (p.mul(t), *d ^ (dt < 0))))
            .collect();
    }
    let inner = inner.iter().map(|(m, d)| Ok((to_fixed::<N>(m)?, *d))).collect::<Result<Vec<_>>>()?;
    let outer = levels[..split]
        .iter()
        .map(|l| l.reps.iter().zip(&l.dets).map(|(m, &d)| Ok((to_fixed::<N>(m)?, d < 0))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Prepared { outer, inner })
}

fn accumulate<const N: usize>(prep: &Prepared<N>, depth: usize, prefix: &Mat<N>, det: bool, ks: &KeySpace, counts: &mut [u64]) {
    if depth == prep.outer.len() {
        for (h, dh) in &prep.inner {
            let m = mat_mul(prefix, h);
            counts[key_index(&m, det ^ dh, ks)] += 1;
        }
        return;
    }
    for (t, dt) in &prep.outer[depth] {
        let next = mat_mul(prefix, t);
        accumulate(prep, depth + 1, &next, det ^ dt, ks, counts);
    }
}

fn identity_fixed<const N: usize>() -> Mat<N> {
    let mut m = [[0i16; N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn enumerate<const N: usize>(chain: &TransversalChain, jobs: Option<usize>) -> Result<CharPolyHistogram> {
    let t = chain.lie_type;
    let ks = KeySpace::new(N);
    let prep = prepare::<N>(chain)?;
    let run = || -> Vec<u64> {
        let id = identity_fixed::<N>();
        if prep.outer.is_empty() {
            let mut counts = vec![0u64; ks.size()];
            accumulate(&prep, 0, &id, false, &ks, &mut counts);
            return counts;
        }
        prep.outer[0]
            .par_iter()
            .fold(
                || vec![0u64; ks.size()],
                |mut counts, (t0, d0)| {
                    accumulate(&prep, 1, t0, *d0, &ks, &mut counts);
                    counts
                },
            )
            .reduce(
                || vec![0u64; ks.size()],
                |mut a, b| {
                    a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    let counts = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::ResourceExhausted(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut hist = CharPolyHistogram::empty(t);
    for (idx, &n) in counts.iter().enumerate() {
        if n > 0 {
            let (det, p) = ks.decode(idx);
            hist.insert(ks.char_poly(det, &p)?, n);
        }
    }
    spot_check(chain, &ks)?;
    hist.validate()?;
    Ok(hist)
}

/// Compare the fast key path with the exact char poly on a few elements.
fn spot_check(chain: &TransversalChain, ks: &KeySpace) -> Result<()> {
    let sizes = chain.sizes();
    for s in 0..64usize {
        let idx: Vec<usize> = sizes.iter().enumerate().map(|(l, &n)| (s * 7919 + l * 104729 + s * s) % n).collect();
        let w = chain.element(&idx);
        let exact = char_poly(&w);
        let mut p = Vec::new();
        let mut pw = w.clone();
        for _ in 0..ks.half {
            p.push(pw.trace());
            pw = pw.mul(&w);
        }
        if ks.char_poly(exact.det(), &p)? != exact {
            return Err(Error::Inconsistent(format!("trace reconstruction disagrees with exact char poly at {idx:?}")));
        }
    }
    Ok(())
}

pub fn histogram_exceptional(t: LieType) -> Result<CharPolyHistogram> {
    histogram_exceptional_with_jobs(t, None)
}

pub fn histogram_exceptional_with_jobs(t: LieType, jobs: Option<usize>) -> Result<CharPolyHistogram> {
    if !t.is_exceptional() {
        return Err(Error::InvalidArgument(format!("{t} is not exceptional")));
    }
    let chain = transversal_chain(t)?;
    match t.rank {
        2 => enumerate::<2>(&chain, jobs),
        4 => enumerate::<4>(&chain, jobs),
        6 => enumerate::<6>(&chain, jobs),
        7 => enumerate::<7>(&chain, jobs),
        8 => enumerate::<8>(&chain, jobs),
        _ => unreachable!("exceptional ranks are 2, 4, 6, 7, 8"),
    }
}
