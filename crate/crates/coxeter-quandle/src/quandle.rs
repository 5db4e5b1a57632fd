//! The Coxeter quandle Q_W: all reflections of W under the conjugation
//! operation x ∗ y = yxy, their conjugacy classes, and the elementary
//! abelian description of W_Ab.

use crate::engine::{GroupElement, GroupTable};
use crate::graph::{odd_components, CoxeterMatrix, OddComponents};

/// A reflection of W together with its conjugacy-class index, which equals
/// the odd-subgraph component of any generator conjugate to it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Reflection {
    pub element: GroupElement,
    pub class_index: usize,
}

/// All reflections of a finite W, indexed in ShortLex order, with the full
/// quandle operation table.
pub struct QuandleTable {
    items: Vec<Reflection>,
    /// group-table index of each reflection
    group_index: Vec<u32>,
    /// op[x * len + y] = index of x ∗ y
    op: Vec<u32>,
}

impl QuandleTable {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn item(&self, i: u32) -> &Reflection {
        &self.items[i as usize]
    }

    pub fn items(&self) -> &[Reflection] {
        &self.items
    }

    pub fn group_index(&self, i: u32) -> u32 {
        self.group_index[i as usize]
    }

    /// x ∗ y by table lookup.
    pub fn op(&self, x: u32, y: u32) -> u32 {
        self.op[x as usize * self.items.len() + y as usize]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<u32> {
        self.items.iter().position(|r| &r.element == g).map(|i| i as u32)
    }

    /// Quandle axiom (1): x ∗ x = x everywhere.
    pub fn idempotent(&self) -> bool {
        (0..self.len() as u32).all(|x| self.op(x, x) == x)
    }

    /// Quandle axiom (3): every right translation is a bijection.
    pub fn right_translations_bijective(&self) -> bool {
        let n = self.len();
        (0..n as u32).all(|y| {
            let mut seen = vec![false; n];
            (0..n as u32).all(|x| {
                let z = self.op(x, y) as usize;
                !std::mem::replace(&mut seen[z], true)
            })
        })
    }

    /// Quandle axiom (2) on one triple: (x∗y)∗z = (x∗z)∗(y∗z).
    pub fn self_distributive_at(&self, x: u32, y: u32, z: u32) -> bool {
        self.op(self.op(x, y), z) == self.op(self.op(x, z), self.op(y, z))
    }

    /// Exhaustive axiom (2) check over all triples.
    pub fn self_distributive(&self) -> bool {
        let n = self.len() as u32;
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.self_distributive_at(x, y, z))))
    }
}

/// Collect the reflections of an enumerated finite W by closing S under
/// conjugation by generators, which costs O(|Q|·|S|) table walks instead of
/// scanning all of W.
pub fn reflections(table: &GroupTable, odd: &OddComponents) -> QuandleTable {
    let n = table.rank();
    let mut class_of_idx: Vec<(u32, usize)> = Vec::new();
    let mut seen: Vec<Option<usize>> = vec![None; table.len()];
    let mut queue: Vec<u32> = Vec::new();
    for s in 0..n as u8 {
        let idx = table.right_mul(0, s);
        if seen[idx as usize].is_none() {
            let class = odd.class_of[s as usize];
            seen[idx as usize] = Some(class);
            class_of_idx.push((idx, class));
            queue.push(idx);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let class = seen[x as usize].unwrap();
        for t in 0..n as u8 {
            // t x t: walk t, then the word of x, then t
            let mut at = table.right_mul(0, t);
            at = table.walk(at, table.element(x).word());
            at = table.right_mul(at, t);
            if seen[at as usize].is_none() {
                seen[at as usize] = Some(class);
                class_of_idx.push((at, class));
                queue.push(at);
            }
        }
    }

    // deterministic order: ShortLex on canonical words = table order
    class_of_idx.sort_by_key(|&(idx, _)| idx);
    let items: Vec<Reflection> = class_of_idx
        .iter()
        .map(|&(idx, class)| Reflection {
            element: table.element(idx).clone(),
            class_index: class,
        })
        .collect();
    let group_index: Vec<u32> = class_of_idx.iter().map(|&(idx, _)| idx).collect();

    // position of each group index within Q
    let mut q_of_group: Vec<Option<u32>> = vec![None; table.len()];
    for (qi, &(gi, _)) in class_of_idx.iter().enumerate() {
        q_of_group[gi as usize] = Some(qi as u32);
    }

    let q = items.len();
    let mut op = vec![0u32; q * q];
    for (yi, &(gy, _)) in class_of_idx.iter().enumerate() {
        let y_word = table.element(gy).word().clone();
        for (xi, &(gx, _)) in class_of_idx.iter().enumerate() {
            // x ∗ y = y x y (y is an involution)
            let mut at = table.walk(0, &y_word);
            at = table.walk(at, table.element(gx).word());
            at = table.walk(at, &y_word);
            let qi = q_of_group[at as usize].expect("conjugate of a reflection is a reflection");
            op[xi * q + yi] = qi;
        }
    }

    QuandleTable { items, group_index, op }
}

/// Partition of the reflections into conjugacy classes: the orbits of the
/// inner action x ↦ x ∗ y. Independent of the class indices carried by the
/// items, so the two can be cross-checked.
pub fn conjugacy_classes(q: &QuandleTable) -> Vec<Vec<u32>> {
    let n = q.len();
    let mut color = vec![usize::MAX; n];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for start in 0..n as u32 {
        if color[start as usize] != usize::MAX {
            continue;
        }
        let k = classes.len();
        classes.push(vec![start]);
        color[start as usize] = k;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in 0..n as u32 {
                let z = q.op(x, y);
                if color[z as usize] == usize::MAX {
                    color[z as usize] = k;
                    classes[k].push(z);
                    stack.push(z);
                }
            }
        }
    }
    for class in &mut classes {
        class.sort_unstable();
    }
    classes
}

/// W_Ab ≅ (Z/2)^{c(W)} with basis {[s] | s a class representative}, and the
/// projection w ↦ (class letter counts mod 2).
#[derive(Clone, Debug)]
pub struct WAbelianization {
    pub odd: OddComponents,
}

impl WAbelianization {
    pub fn new(matrix: &CoxeterMatrix) -> Self {
        WAbelianization { odd: odd_components(matrix) }
    }

    pub fn rank(&self) -> usize {
        self.odd.count
    }

    pub fn basis(&self) -> &[u8] {
        &self.odd.representatives
    }

    /// Image of a word in (Z/2)^{c(W)}. Any representative word works: both
    /// ss-deletions and braid moves preserve class letter counts mod 2.
    pub fn image(&self, word: &[u8]) -> Vec<u8> {
        let mut v = vec![0u8; self.odd.count];
        for &g in word {
            let k = self.odd.class_of[g as usize];
            v[k] ^= 1;
        }
        v
    }

    pub fn describe(&self) -> String {
        format!("(Z/2)^{}", self.odd.count)
    }
}

pub fn w_abelianization(matrix: &CoxeterMatrix) -> WAbelianization {
    WAbelianization::new(matrix)
}

/// Recognize an element as a reflection without enumerating W: an element
/// is a reflection exactly when some reduced word of it is a palindrome
/// u s u^rev, and the middle letter pins the conjugacy class. Works for
/// infinite groups within the word budget.
pub fn reflection_from_element(
    engine: &crate::engine::Engine,
    odd: &OddComponents,
    g: &GroupElement,
) -> Result<Option<Reflection>, crate::engine::EngineError> {
    if g.length() % 2 == 0 {
        return Ok(None);
    }
    for word in engine.all_reduced_words(g)? {
        let is_palindrome = word.iter().zip(word.iter().rev()).all(|(a, b)| a == b);
        if is_palindrome {
            let mid = word[word.len() / 2];
            return Ok(Some(Reflection {
                element: g.clone(),
                class_index: odd.class_of[mid as usize],
            }));
        }
    }
    Ok(None)
}
