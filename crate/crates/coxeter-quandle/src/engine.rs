//! Exact element arithmetic for W: canonical forms, multiplication, the
//! word problem, reduced-word orbits, and finite enumeration.
//!
//! Two interchangeable backends: a word engine (Tits saturation, works for
//! any W, budgeted) and a permutation engine on the root system (finite W
//! only, fast). Both produce the same canonical form: the ShortLex-least
//! reduced word.

use crate::graph::{CoxeterMatrix, Word};
use crate::rootsys::{self, RootSystem};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("word problem budget exceeded: braid orbit grew past {budget} states")]
    WordProblemBudgetExceeded { budget: usize },
    #[error("enumeration cap exceeded ({cap} elements): group is infinite or too large")]
    EnumerationCapExceeded { cap: usize },
}

/// Resource knobs. Exceeding a budget is an explicit error, never a wrong
/// answer.
#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Braid-orbit saturation cap per canonicalization (word engine).
    pub max_orbit_states: usize,
    /// Element cap for finite enumeration.
    pub max_elements: usize,
    /// Root cap when probing for a finite root system.
    pub max_roots: usize,
    /// Bound on the word-engine canonicalization cache.
    pub canon_cache_cap: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_orbit_states: 100_000,
            max_elements: 2_000_000,
            max_roots: 100_000,
            canon_cache_cap: 1_000_000,
        }
    }
}

/// An element of W in canonical form: the ShortLex-least reduced word.
///
/// Ordering is ShortLex (length, then lexicographic), so sorting elements
/// sorts them by length first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    canon: Word,
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        shortlex(&self.canon, &other.canon)
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { canon: Word::new() }
    }

    pub(crate) fn from_canon(canon: Word) -> Self {
        GroupElement { canon }
    }

    pub fn word(&self) -> &Word {
        &self.canon
    }

    pub fn length(&self) -> usize {
        self.canon.len()
    }

    pub fn is_identity(&self) -> bool {
        self.canon.is_empty()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.canon.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.canon.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Delete adjacent equal pairs (generators are involutions). A single stack
/// pass removes nested pairs completely.
fn free_reduce(word: &[u8]) -> Word {
    let mut out = Word::with_capacity(word.len());
    for &g in word {
        if out.last() == Some(&g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

/// Word-engine backend: canonical form by braid-orbit saturation.
struct WordBackend {
    cache: Mutex<HashMap<Word, Word>>,
}

impl WordBackend {
    fn new() -> Self {
        WordBackend { cache: Mutex::new(HashMap::new()) }
    }

    /// All single braid replacements (xy)_m → (yx)_m applicable to `word`.
    /// Returns each rewritten word; boundary letters may now collide.
    fn braid_neighbors(matrix: &CoxeterMatrix, word: &[u8], out: &mut Vec<Word>) {
        out.clear();
        let len = word.len();
        for i in 0..len.saturating_sub(1) {
            let x = word[i];
            let y = word[i + 1];
            if x == y {
                continue;
            }
            let m = match matrix.bond(x, y).finite() {
                Some(m) => m as usize,
                None => continue,
            };
            if m < 2 || i + m > len {
                continue;
            }
            // need word[i..i+m] == x y x y ...
            let alternating = (0..m).all(|k| word[i + k] == if k % 2 == 0 { x } else { y });
            if !alternating {
                continue;
            }
            let mut v = word.to_vec();
            for k in 0..m {
                v[i + k] = if k % 2 == 0 { y } else { x };
            }
            out.push(v);
        }
    }

    fn canonicalize(
        &self,
        matrix: &CoxeterMatrix,
        config: &EngineConfig,
        word: &[u8],
    ) -> Result<Word, EngineError> {
        let mut current = free_reduce(word);
        'shrink: loop {
            if let Some(hit) = self.cache.lock().unwrap().get(&current) {
                return Ok(hit.clone());
            }
            // Saturate the braid orbit of `current`. If any member exposes an
            // equal adjacent pair the word was not reduced: delete and retry.
            let mut visited: HashSet<Word> = HashSet::new();
            let mut queue: VecDeque<Word> = VecDeque::new();
            visited.insert(current.clone());
            queue.push_back(current.clone());
            let mut scratch = Vec::new();
            while let Some(w) = queue.pop_front() {
                Self::braid_neighbors(matrix, &w, &mut scratch);
                for v in scratch.drain(..) {
                    let reduced = free_reduce(&v);
                    if reduced.len() < v.len() {
                        current = reduced;
                        continue 'shrink;
                    }
                    if visited.contains(&v) {
                        continue;
                    }
                    if visited.len() >= config.max_orbit_states {
                        return Err(EngineError::WordProblemBudgetExceeded {
                            budget: config.max_orbit_states,
                        });
                    }
                    visited.insert(v.clone());
                    queue.push_back(v);
                }
            }
            // orbit complete and deletion-free: `current` is reduced and the
            // orbit is the full set of its reduced words
            let canon = visited.iter().min().cloned().unwrap_or_default();
            let mut cache = self.cache.lock().unwrap();
            if cache.len() + visited.len() > config.canon_cache_cap {
                cache.clear();
            }
            for member in visited {
                cache.insert(member, canon.clone());
            }
            return Ok(canon);
        }
    }

    /// The complete braid orbit of a reduced word, sorted.
    fn reduced_orbit(
        &self,
        matrix: &CoxeterMatrix,
        config: &EngineConfig,
        reduced: &[u8],
    ) -> Result<Vec<Word>, EngineError> {
        let mut visited: HashSet<Word> = HashSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        visited.insert(reduced.to_vec());
        queue.push_back(reduced.to_vec());
        let mut scratch = Vec::new();
        while let Some(w) = queue.pop_front() {
            Self::braid_neighbors(matrix, &w, &mut scratch);
            for v in scratch.drain(..) {
                debug_assert_eq!(free_reduce(&v).len(), v.len(), "orbit of a reduced word");
                if visited.contains(&v) {
                    continue;
                }
                if visited.len() >= config.max_orbit_states {
                    return Err(EngineError::WordProblemBudgetExceeded {
                        budget: config.max_orbit_states,
                    });
                }
                visited.insert(v.clone());
                queue.push_back(v);
            }
        }
        let mut orbit: Vec<Word> = visited.into_iter().collect();
        orbit.sort();
        Ok(orbit)
    }
}

/// Permutation backend on the indexed root set of a finite W.
struct PermBackend {
    roots: Arc<RootSystem>,
}

impl PermBackend {
    /// Permutation of root indices for w⁻¹ where `word` spells w.
    fn inverse_perm(&self, word: &[u8]) -> Vec<u32> {
        let total = self.roots.len();
        let mut q: Vec<u32> = (0..total as u32).collect();
        // w⁻¹ = s_k ⋯ s_1 applied root-first through s_1
        for &s in word {
            let action = self.roots.generator_actions()[s as usize].as_slice();
            for slot in q.iter_mut() {
                *slot = action[*slot as usize];
            }
        }
        q
    }

    fn canonicalize(&self, rank: usize, word: &[u8]) -> Word {
        let q = self.inverse_perm(word);
        self.descend(rank, q)
    }

    fn descend(&self, rank: usize, q: Vec<u32>) -> Word {
        let sign: Vec<i8> = (0..self.roots.len() as u32).map(|i| self.roots.sign(i)).collect();
        rootsys::descend_to_word(&sign, self.roots.generator_actions(), rank, q)
            .expect("faithful action always descends")
    }
}

enum Backend {
    Word(WordBackend),
    Perm(PermBackend),
}

/// Canonical-form arithmetic for one Coxeter matrix.
pub struct Engine {
    matrix: CoxeterMatrix,
    config: EngineConfig,
    backend: Backend,
}

impl Engine {
    /// Word engine: works for every W, budgeted saturation.
    pub fn word(matrix: CoxeterMatrix, config: EngineConfig) -> Engine {
        Engine { matrix, config, backend: Backend::Word(WordBackend::new()) }
    }

    /// Permutation engine over a prebuilt finite root system.
    pub fn with_root_system(
        matrix: CoxeterMatrix,
        roots: Arc<RootSystem>,
        config: EngineConfig,
    ) -> Engine {
        Engine { matrix, config, backend: Backend::Perm(PermBackend { roots }) }
    }

    /// Probe for a finite root system and pick the permutation engine when
    /// it exists; fall back to the word engine when the closure overflows.
    pub fn auto(
        matrix: CoxeterMatrix,
        config: EngineConfig,
    ) -> Result<(Engine, Option<Arc<RootSystem>>), rootsys::RootError> {
        match rootsys::build_root_system(&matrix, config.max_roots) {
            Ok(phi) => {
                let phi = Arc::new(phi);
                Ok((Engine::with_root_system(matrix, phi.clone(), config), Some(phi)))
            }
            Err(rootsys::RootError::CapExceeded { .. }) => {
                Ok((Engine::word(matrix, config), None))
            }
            Err(e) => Err(e),
        }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn is_permutation_backed(&self) -> bool {
        matches!(self.backend, Backend::Perm(_))
    }

    /// Canonical form of an arbitrary word.
    pub fn canonicalize(&self, word: &[u8]) -> Result<GroupElement, EngineError> {
        let canon = match &self.backend {
            Backend::Word(wb) => wb.canonicalize(&self.matrix, &self.config, word)?,
            Backend::Perm(pb) => pb.canonicalize(self.matrix.rank(), word),
        };
        Ok(GroupElement::from_canon(canon))
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, EngineError> {
        let mut w = a.canon.clone();
        w.extend_from_slice(&b.canon);
        self.canonicalize(&w)
    }

    /// Inverse: generators are involutions, so reverse the word.
    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, EngineError> {
        let rev: Word = a.canon.iter().rev().copied().collect();
        self.canonicalize(&rev)
    }

    pub fn generator(&self, s: u8) -> GroupElement {
        GroupElement::from_canon(vec![s])
    }

    /// Do two arbitrary words represent the same element?
    pub fn words_equal(&self, u: &[u8], v: &[u8]) -> Result<bool, EngineError> {
        Ok(self.canonicalize(u)? == self.canonicalize(v)?)
    }

    /// The complete set of reduced words of `g` (its braid-move orbit),
    /// sorted. Every member has length ℓ(g).
    pub fn all_reduced_words(&self, g: &GroupElement) -> Result<Vec<Word>, EngineError> {
        // orbit saturation is word-level work regardless of backend
        let wb = WordBackend::new();
        wb.reduced_orbit(&self.matrix, &self.config, &g.canon)
    }

    /// BFS over the Cayley graph in length order; the full table of a
    /// finite W, or `EnumerationCapExceeded`.
    pub fn enumerate(&self) -> Result<GroupTable, EngineError> {
        self.enumerate_capped(self.config.max_elements)
    }

    pub fn enumerate_capped(&self, cap: usize) -> Result<GroupTable, EngineError> {
        match &self.backend {
            Backend::Perm(pb) => {
                let total = pb.roots.len();
                let identity: Vec<u32> = (0..total as u32).collect();
                self.bfs_enumerate(
                    cap,
                    identity,
                    |state, s| {
                        let action = pb.roots.generator_actions()[s as usize].as_slice();
                        // right product w·s acts by s first
                        Ok(action.iter().map(|&i| state[i as usize]).collect())
                    },
                    |state: &Vec<u32>| {
                        // state is perm(w); descend wants perm(w⁻¹)
                        let mut inv = vec![0u32; state.len()];
                        for (i, &p) in state.iter().enumerate() {
                            inv[p as usize] = i as u32;
                        }
                        Ok(pb.descend(self.matrix.rank(), inv))
                    },
                )
            }
            Backend::Word(wb) => self.bfs_enumerate(
                cap,
                Word::new(),
                |state, s| {
                    let mut w = state.clone();
                    w.push(s);
                    wb.canonicalize(&self.matrix, &self.config, &w)
                },
                |state: &Word| Ok(state.clone()),
            ),
        }
    }

    fn bfs_enumerate<S, FM, FC>(
        &self,
        cap: usize,
        identity: S,
        mut step: FM,
        mut canon_of: FC,
    ) -> Result<GroupTable, EngineError>
    where
        S: Clone + Eq + std::hash::Hash,
        FM: FnMut(&S, u8) -> Result<S, EngineError>,
        FC: FnMut(&S) -> Result<Word, EngineError>,
    {
        let n = self.matrix.rank();
        let mut index: HashMap<S, u32> = HashMap::new();
        let mut states: Vec<S> = Vec::new();
        let mut canon: Vec<Word> = Vec::new();
        let mut gen_right: Vec<u32> = Vec::new();

        index.insert(identity.clone(), 0);
        states.push(identity.clone());
        canon.push(canon_of(&identity)?);

        let mut level: Vec<u32> = vec![0];
        while !level.is_empty() {
            // discover next level
            let mut pending: Vec<S> = Vec::new();
            for &i in &level {
                for s in 0..n as u8 {
                    let next = step(&states[i as usize], s)?;
                    if !index.contains_key(&next) {
                        pending.push(next);
                    }
                }
            }
            // assign indices in ShortLex order of canonical words
            let mut fresh: Vec<(Word, S)> = Vec::new();
            {
                let mut seen: HashSet<&S> = HashSet::new();
                for st in &pending {
                    if seen.insert(st) {
                        fresh.push((canon_of(st)?, st.clone()));
                    }
                }
            }
            fresh.sort_by(|a, b| shortlex(&a.0, &b.0));
            let mut next_level = Vec::with_capacity(fresh.len());
            for (w, st) in fresh {
                if states.len() + 1 > cap {
                    return Err(EngineError::EnumerationCapExceeded { cap });
                }
                let id = states.len() as u32;
                index.insert(st.clone(), id);
                states.push(st);
                canon.push(w);
                next_level.push(id);
            }
            level = next_level;
        }

        // fill the full right-multiplication table now that every element
        // has an index
        gen_right.resize(states.len() * n, 0);
        for i in 0..states.len() {
            for s in 0..n as u8 {
                let next = step(&states[i], s)?;
                let j = *index.get(&next).expect("closed under generators");
                gen_right[i * n + s as usize] = j;
            }
        }

        let elements: Vec<GroupElement> =
            canon.into_iter().map(GroupElement::from_canon).collect();
        let mut by_word: HashMap<Word, u32> = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            by_word.insert(e.canon.clone(), i as u32);
        }
        // inverse = reversed word walked from the identity
        let mut inv = vec![0u32; elements.len()];
        for i in 0..elements.len() {
            let mut at = 0u32;
            for &s in elements[i].canon.iter().rev() {
                at = gen_right[at as usize * n + s as usize];
            }
            inv[i] = at;
        }
        Ok(GroupTable { rank: n, elements, index: by_word, gen_right, inv })
    }
}

fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All elements of a finite W in length-then-ShortLex order, with the
/// right-multiplication table, inverses, and an index by canonical word.
pub struct GroupTable {
    rank: usize,
    elements: Vec<GroupElement>,
    index: HashMap<Word, u32>,
    gen_right: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn element(&self, i: u32) -> &GroupElement {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<u32> {
        self.index.get(&g.canon).copied()
    }

    pub fn right_mul(&self, i: u32, s: u8) -> u32 {
        self.gen_right[i as usize * self.rank + s as usize]
    }

    /// Walk a word from an arbitrary starting element.
    pub fn walk(&self, start: u32, word: &[u8]) -> u32 {
        word.iter().fold(start, |at, &s| self.right_mul(at, s))
    }

    /// Index of the element a given word represents.
    pub fn word_index(&self, word: &[u8]) -> u32 {
        self.walk(0, word)
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.walk(i, &self.elements[j as usize].canon)
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }
}
