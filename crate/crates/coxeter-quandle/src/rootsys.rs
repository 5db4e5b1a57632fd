//! The geometric representation: bilinear form, root system closure, the
//! rack structure on roots, and the two-to-one projection onto reflections.

use crate::engine::GroupElement;
use crate::graph::{odd_components, Bond, CoxeterMatrix, Word};
use crate::quandle::Reflection;
use std::collections::HashMap;
use std::f64::consts::PI;
use thiserror::Error;

/// Roots closer than this (max-norm) are the same root.
pub const SNAP_TOL: f64 = 1e-8;
/// Distinct roots closer than this indicate the numerics can no longer be
/// trusted; closure refuses instead of guessing.
pub const GAP_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum RootError {
    #[error("root cap exceeded ({cap}): root system is infinite or too large")]
    CapExceeded { cap: usize },
    #[error("distinct roots within {GAP_TOL} of each other: bond orders exceed numeric resolution")]
    GapTooSmall,
    #[error("numeric instability in root closure: {0}")]
    Numeric(String),
}

/// The symmetric form B(α_s, α_t) = −cos(π / m(s,t)), with −1 at m = ∞.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    n: usize,
    entries: Vec<f64>,
}

impl BilinearForm {
    pub fn new(matrix: &CoxeterMatrix) -> Self {
        let n = matrix.rank();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = match matrix.bond(i as u8, j as u8) {
                    Bond::Finite(1) => 1.0,
                    Bond::Finite(2) => 0.0,
                    Bond::Finite(m) => -(PI / m as f64).cos(),
                    Bond::Infinite => -1.0,
                };
            }
        }
        BilinearForm { n, entries }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// B(x, y) for coordinate vectors in the simple-root basis.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            if x[i] == 0.0 {
                continue;
            }
            let mut row = 0.0;
            for j in 0..self.n {
                row += self.entry(i, j) * y[j];
            }
            acc += x[i] * row;
        }
        acc
    }
}

/// The reflection along `alpha`: λ ↦ λ − 2 B(α, λ) α.
pub fn reflect(form: &BilinearForm, alpha: &[f64], lambda: &[f64]) -> Vec<f64> {
    let coeff = 2.0 * form.eval(alpha, lambda);
    lambda.iter().zip(alpha).map(|(l, a)| l - coeff * a).collect()
}

/// Snap-deduplicating index over root coordinate vectors.
///
/// Buckets coordinates at a coarse scale and checks neighbor buckets only
/// where a coordinate sits near a bucket boundary, so lookups stay exact
/// with respect to the `SNAP_TOL`/`GAP_TOL` contract without scanning.
struct RootIndexer {
    scale: f64,
    buckets: HashMap<Vec<i64>, Vec<u32>>,
}

enum Probe {
    Known(u32),
    TooClose,
    New,
}

impl RootIndexer {
    fn new() -> Self {
        RootIndexer { scale: 1e5, buckets: HashMap::new() }
    }

    fn base_key(&self, coords: &[f64]) -> Vec<i64> {
        coords.iter().map(|c| (c * self.scale).round() as i64).collect()
    }

    fn candidate_keys(&self, coords: &[f64]) -> Option<Vec<Vec<i64>>> {
        // A root within GAP_TOL of `coords` can live in a neighboring bucket
        // only when the coordinate is this close to a bucket boundary.
        let margin = 0.5 - (GAP_TOL + SNAP_TOL) * self.scale;
        let mut keys: Vec<Vec<i64>> = vec![Vec::with_capacity(coords.len())];
        for &c in coords {
            let scaled = c * self.scale;
            let k = scaled.round() as i64;
            let frac = scaled - k as f64;
            let mut opts = vec![k];
            if frac > margin {
                opts.push(k + 1);
            } else if frac < -margin {
                opts.push(k - 1);
            }
            let mut next = Vec::with_capacity(keys.len() * opts.len());
            for key in &keys {
                for &o in &opts {
                    let mut k2 = key.clone();
                    k2.push(o);
                    next.push(k2);
                }
            }
            if next.len() > 4096 {
                return None; // degenerate input; caller falls back to a scan
            }
            keys = next;
        }
        Some(keys)
    }

    fn probe(&self, coords: &[f64], all: &[Vec<f64>]) -> Probe {
        let dist = |a: &[f64], b: &[f64]| {
            a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
        };
        let mut best: Option<(f64, u32)> = None;
        match self.candidate_keys(coords) {
            Some(keys) => {
                for key in keys {
                    if let Some(bucket) = self.buckets.get(&key) {
                        for &idx in bucket {
                            let d = dist(coords, &all[idx as usize]);
                            if best.map_or(true, |(bd, _)| d < bd) {
                                best = Some((d, idx));
                            }
                        }
                    }
                }
            }
            None => {
                for (idx, root) in all.iter().enumerate() {
                    let d = dist(coords, root);
                    if best.map_or(true, |(bd, _)| d < bd) {
                        best = Some((d, idx as u32));
                    }
                }
            }
        }
        match best {
            Some((d, idx)) if d <= SNAP_TOL => Probe::Known(idx),
            Some((d, _)) if d <= GAP_TOL => Probe::TooClose,
            _ => Probe::New,
        }
    }

    fn record(&mut self, coords: &[f64], idx: u32) {
        self.buckets.entry(self.base_key(coords)).or_default().push(idx);
    }
}

/// The full root system of a finite Coxeter group, closed under every
/// simple reflection, with the sign split, the ±α pairing, and the
/// projection onto reflections computed once at construction.
#[derive(Debug)]
pub struct RootSystem {
    form: BilinearForm,
    coords: Vec<Vec<f64>>,
    sign: Vec<i8>,
    neg_of: Vec<u32>,
    /// gen_action[s][i] = index of σ_s(root i)
    gen_action: Vec<Vec<u32>>,
    /// simple generator whose root this one is W-conjugate to
    base_gen: Vec<u8>,
    refl_word: Vec<Word>,
    refl_class: Vec<usize>,
    /// refl_action[b][a] = index of t_β(α): the root rack, tabulated
    refl_action: Vec<Vec<u32>>,
}

impl RootSystem {
    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self, i: u32) -> &[f64] {
        &self.coords[i as usize]
    }

    pub fn sign(&self, i: u32) -> i8 {
        self.sign[i as usize]
    }

    pub fn neg_of(&self, i: u32) -> u32 {
        self.neg_of[i as usize]
    }

    pub fn positive_count(&self) -> usize {
        self.sign.iter().filter(|&&s| s > 0).count()
    }

    /// Index of the simple root α_s (they seed the closure, in order).
    pub fn simple_root(&self, s: u8) -> u32 {
        s as u32
    }

    pub fn apply_generator(&self, s: u8, root: u32) -> u32 {
        self.gen_action[s as usize][root as usize]
    }

    pub fn generator_actions(&self) -> &[Vec<u32>] {
        &self.gen_action
    }

    /// Class index (odd component) of the reflection below this root.
    pub fn class_of(&self, i: u32) -> usize {
        self.refl_class[i as usize]
    }

    pub fn base_generator(&self, i: u32) -> u8 {
        self.base_gen[i as usize]
    }

    pub fn reflection_word(&self, i: u32) -> &Word {
        &self.refl_word[i as usize]
    }
}

/// Close `{α_s}` under all simple reflections.
///
/// Exceeding `cap` signals an infinite (or unreasonably large) root system.
pub fn build_root_system(matrix: &CoxeterMatrix, cap: usize) -> Result<RootSystem, RootError> {
    let n = matrix.rank();
    let form = BilinearForm::new(matrix);
    let odd = odd_components(matrix);

    let mut coords: Vec<Vec<f64>> = Vec::new();
    let mut sign: Vec<i8> = Vec::new();
    let mut base_gen: Vec<u8> = Vec::new();
    let mut indexer = RootIndexer::new();
    let mut gen_action: Vec<Vec<u32>> = vec![Vec::new(); n];

    let sign_of = |c: &[f64]| -> Result<i8, RootError> {
        if c.iter().all(|&x| x >= -SNAP_TOL) {
            Ok(1)
        } else if c.iter().all(|&x| x <= SNAP_TOL) {
            Ok(-1)
        } else {
            Err(RootError::Numeric("root with mixed-sign coordinates".into()))
        }
    };

    let push_root = |coords: &mut Vec<Vec<f64>>,
                         sign: &mut Vec<i8>,
                         base_gen: &mut Vec<u8>,
                         indexer: &mut RootIndexer,
                         c: Vec<f64>,
                         base: u8|
     -> Result<u32, RootError> {
        match indexer.probe(&c, coords) {
            Probe::Known(idx) => Ok(idx),
            Probe::TooClose => Err(RootError::GapTooSmall),
            Probe::New => {
                if coords.len() >= cap {
                    return Err(RootError::CapExceeded { cap });
                }
                let norm = form.eval(&c, &c);
                if (norm - 1.0).abs() > 1e-6 {
                    return Err(RootError::Numeric(format!("root norm drifted to {norm}")));
                }
                let idx = coords.len() as u32;
                sign.push(sign_of(&c)?);
                base_gen.push(base);
                indexer.record(&c, idx);
                coords.push(c);
                Ok(idx)
            }
        }
    };

    for s in 0..n {
        let mut e = vec![0.0; n];
        e[s] = 1.0;
        push_root(&mut coords, &mut sign, &mut base_gen, &mut indexer, e, s as u8)?;
    }

    let mut next = 0usize;
    while next < coords.len() {
        let i = next;
        next += 1;
        for s in 0..n {
            // σ_s(λ) = λ − 2(Bλ)_s α_s touches only coordinate s
            let mut image = coords[i].clone();
            let coeff: f64 = (0..n).map(|j| form.entry(s, j) * coords[i][j]).sum();
            image[s] -= 2.0 * coeff;
            let base = base_gen[i];
            let idx =
                push_root(&mut coords, &mut sign, &mut base_gen, &mut indexer, image, base)?;
            gen_action[s].push(idx);
            debug_assert_eq!(gen_action[s].len(), i + 1);
        }
    }

    let total = coords.len();
    let mut neg_of = vec![0u32; total];
    for i in 0..total {
        let negated: Vec<f64> = coords[i].iter().map(|c| -c).collect();
        match indexer.probe(&negated, &coords) {
            Probe::Known(j) => neg_of[i] = j,
            _ => return Err(RootError::Numeric("closed system is missing a negative".into())),
        }
    }

    // Reflection below each root: t_α(β) = β − 2B(α,β)α as a permutation of
    // roots, canonicalized by greedy descent. ±α share the computation.
    let mut refl_word: Vec<Option<Word>> = vec![None; total];
    let mut refl_action: Vec<Vec<u32>> = vec![Vec::new(); total];
    for a in 0..total {
        if refl_word[a].is_some() {
            continue;
        }
        let alpha = &coords[a];
        let mut perm = Vec::with_capacity(total);
        for b in 0..total {
            let image = reflect(&form, alpha, &coords[b]);
            match indexer.probe(&image, &coords) {
                Probe::Known(j) => perm.push(j),
                _ => return Err(RootError::Numeric("reflection image left the system".into())),
            }
        }
        let word = descend_to_word(&sign, &gen_action, n, perm.clone())
            .ok_or_else(|| RootError::Numeric("reflection permutation did not descend".into()))?;
        refl_word[a] = Some(word.clone());
        refl_word[neg_of[a] as usize] = Some(word);
        refl_action[neg_of[a] as usize] = perm.clone();
        refl_action[a] = perm;
    }
    let refl_word: Vec<Word> = refl_word.into_iter().map(Option::unwrap).collect();
    let refl_class: Vec<usize> =
        base_gen.iter().map(|&g| odd.class_of[g as usize]).collect();

    Ok(RootSystem {
        form,
        coords,
        sign,
        neg_of,
        gen_action,
        base_gen,
        refl_word,
        refl_class,
        refl_action,
    })
}

/// ShortLex-least reduced word of the element w whose INVERSE acts on roots
/// by `perm`, peeling the least generator that shortens w at every step.
pub(crate) fn descend_to_word(
    sign: &[i8],
    gen_action: &[Vec<u32>],
    rank: usize,
    mut perm: Vec<u32>,
) -> Option<Word> {
    let mut out = Word::new();
    let limit = sign.len() + 1;
    for _ in 0..limit {
        let mut next = None;
        for s in 0..rank {
            // ℓ(s·w) < ℓ(w) iff w⁻¹(α_s) is negative
            if sign[perm[s] as usize] < 0 {
                next = Some(s);
                break;
            }
        }
        match next {
            None => {
                // no descent left: must be the identity
                if perm.iter().enumerate().all(|(i, &p)| p == i as u32) {
                    return Some(out);
                }
                return None;
            }
            Some(s) => {
                out.push(s as u8);
                // w ← s·w replaces w⁻¹ by w⁻¹·s: q'[i] = q[p_s[i]]
                let action = &gen_action[s];
                perm = action.iter().map(|&i| perm[i as usize]).collect::<Vec<u32>>();
            }
        }
    }
    None
}

/// Rack operation on root indices: α ∗ β = t_β(α).
pub fn rack_op(phi: &RootSystem, a: u32, b: u32) -> u32 {
    phi.refl_action[b as usize][a as usize]
}

impl RootSystem {
    /// Locate a coordinate vector among the stored roots (snap tolerance).
    pub fn locate(&self, coords: &[f64]) -> Option<u32> {
        // linear scan is fine here: called on closed finite systems
        let mut best: Option<(f64, u32)> = None;
        for (i, r) in self.coords.iter().enumerate() {
            let d = coords.iter().zip(r).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, i as u32));
            }
        }
        best.and_then(|(d, i)| (d <= SNAP_TOL).then_some(i))
    }
}

/// The projection p: Φ_W → Q_W, α ↦ t_α. Collapses ±α to one reflection.
pub fn project_p(phi: &RootSystem, a: u32) -> Reflection {
    Reflection {
        element: GroupElement::from_canon(phi.reflection_word(a).clone()),
        class_index: phi.class_of(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn form_values() {
        let b = BilinearForm::new(&catalog("B2").unwrap());
        assert_eq!(b.entry(0, 0), 1.0);
        assert!((b.entry(0, 1) + (2.0_f64).sqrt() / 2.0).abs() < 1e-12);
        let inf = BilinearForm::new(&catalog("tilde-A1").unwrap());
        assert_eq!(inf.entry(0, 1), -1.0);
    }

    #[test]
    fn reflect_examples() {
        // A2: σ_s(α_t) = α_s + α_t
        let m = catalog("A2").unwrap();
        let form = BilinearForm::new(&m);
        let out = reflect(&form, &[1.0, 0.0], &[0.0, 1.0]);
        assert!(close(&out, &[1.0, 1.0]));
        // σ_s(α_s) = −α_s
        let out = reflect(&form, &[1.0, 0.0], &[1.0, 0.0]);
        assert!(close(&out, &[-1.0, 0.0]));
        // B2: σ_s(α_t) = α_t + √2 α_s
        let m = catalog("B2").unwrap();
        let form = BilinearForm::new(&m);
        let out = reflect(&form, &[1.0, 0.0], &[0.0, 1.0]);
        assert!(close(&out, &[(2.0_f64).sqrt(), 1.0]));
    }

    #[test]
    fn root_counts() {
        for (name, total) in [("A2", 6), ("B2", 8), ("A3", 12), ("H3", 30), ("I2(7)", 14)] {
            let phi = build_root_system(&catalog(name).unwrap(), 100_000).unwrap();
            assert_eq!(phi.len(), total, "{name}");
            assert_eq!(phi.positive_count() * 2, total, "{name}");
        }
    }

    #[test]
    fn infinite_system_hits_cap() {
        let err = build_root_system(&catalog("tilde-A1").unwrap(), 500).unwrap_err();
        assert!(matches!(err, RootError::CapExceeded { cap: 500 }));
        let err = build_root_system(&catalog("tilde-A2").unwrap(), 500).unwrap_err();
        assert!(matches!(err, RootError::CapExceeded { .. }));
    }

    #[test]
    fn rack_self_action_negates() {
        let phi = build_root_system(&catalog("A2").unwrap(), 1000).unwrap();
        for a in 0..phi.len() as u32 {
            assert_eq!(rack_op(&phi, a, a), phi.neg_of(a));
            // involutive: (α ∗ β) ∗ β = α
            for b in 0..phi.len() as u32 {
                assert_eq!(rack_op(&phi, rack_op(&phi, a, b), b), a);
            }
        }
    }

    #[test]
    fn rack_a2_simple_sum() {
        let phi = build_root_system(&catalog("A2").unwrap(), 1000).unwrap();
        let s = phi.simple_root(0);
        let t = phi.simple_root(1);
        let sum = rack_op(&phi, s, t);
        assert!(close(phi.coords(sum), &[1.0, 1.0]));
    }

    #[test]
    fn projection_collapses_pairs() {
        let phi = build_root_system(&catalog("A2").unwrap(), 1000).unwrap();
        // α_s ↦ s, and −α_s to the same reflection
        let s = phi.simple_root(0);
        assert_eq!(phi.reflection_word(s), &vec![0]);
        assert_eq!(phi.reflection_word(phi.neg_of(s)), &vec![0]);
        // the highest root of A2 projects to sts
        let high = phi.locate(&[1.0, 1.0]).unwrap();
        assert_eq!(phi.reflection_word(high), &vec![0, 1, 0]);
    }

    #[test]
    fn form_preserved_by_action() {
        let phi = build_root_system(&catalog("B2").unwrap(), 1000).unwrap();
        let form = phi.form();
        for i in 0..phi.len() as u32 {
            for j in 0..phi.len() as u32 {
                let before = form.eval(phi.coords(i), phi.coords(j));
                for s in 0..2u8 {
                    let after = form.eval(
                        phi.coords(phi.apply_generator(s, i)),
                        phi.coords(phi.apply_generator(s, j)),
                    );
                    assert!((before - after).abs() < 1e-8);
                }
            }
        }
    }
}
