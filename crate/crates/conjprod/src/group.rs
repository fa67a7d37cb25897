//! Exhaustively enumerated finite groups with indexed multiplication.
//!
//! A `GroupTable` fixes a bijection between group elements and indices
//! `0..order`, with the identity always at index 0. Elements are listed
//! in breadth-first order from the identity under a fixed generator
//! order, so the same generators always produce the same indexing.
//!
//! Tables are immutable after construction and safe to share across
//! threads. Quotient groups and subgroups are backed by their parent
//! table and multiply through it; a full multiplication table is cached
//! only for small orders.

use crate::bits::BitVec;
use crate::elem::{CodeMap, Domain, Element};
use std::sync::Arc;
use thiserror::Error;

/// Orders at or below this cache the full multiplication table.
pub const MULT_CACHE_LIMIT: usize = 4096;

/// Default ceiling on enumerated group order.
pub const DEFAULT_CAP: usize = 20_000_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group order exceeds cap {0}")]
    CapExceeded(usize),
    #[error("generators live in incompatible domains")]
    DomainMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("generator list is empty")]
    NoGenerators,
    #[error("invalid element for this domain")]
    InvalidElement,
}

enum Backing {
    Concrete {
        domain: Domain,
        codes: Vec<u64>,
        index: CodeMap<u32>,
    },
    Quotient {
        parent: Arc<GroupTable>,
        reps: Vec<u32>,
        coset_of: Vec<u32>,
    },
    Sub {
        parent: Arc<GroupTable>,
        members: Vec<u32>,
        pos: Vec<u32>, // parent index -> sub index + 1, 0 = absent
    },
}

pub struct GroupTable {
    order: usize,
    backing: Backing,
    inverses: Vec<u32>,
    mult_table: Option<Vec<u32>>,
    generators: Vec<u32>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable(order={})", self.order)
    }
}

/// Breadth-first closure of the generators under multiplication.
///
/// Ordering is deterministic: identity first, then frontier elements
/// multiplied on the right by each generator in the given order.
pub fn enumerate_group(generators: &[Element], cap: usize) -> Result<Arc<GroupTable>, GroupError> {
    let first = generators.first().ok_or(GroupError::NoGenerators)?;
    let domain = first.domain.clone();
    let mut gen_codes = Vec::new();
    for g in generators {
        if g.domain != domain {
            return Err(GroupError::DomainMismatch);
        }
        if !domain.is_valid(g.code) {
            return Err(GroupError::InvalidElement);
        }
        gen_codes.push(g.code);
    }
    enumerate_codes(domain, &gen_codes, cap)
}

pub fn enumerate_codes(
    domain: Domain,
    gen_codes: &[u64],
    cap: usize,
) -> Result<Arc<GroupTable>, GroupError> {
    let id = domain.identity();
    let mut codes: Vec<u64> = vec![id];
    let mut index: CodeMap<u32> = CodeMap::default();
    index.insert(id, 0);
    let mut cursor = 0usize;
    while cursor < codes.len() {
        let x = codes[cursor];
        cursor += 1;
        for &g in gen_codes {
            let y = domain.mul(x, g);
            if !index.contains_key(&y) {
                if codes.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                index.insert(y, codes.len() as u32);
                codes.push(y);
            }
        }
    }
    let order = codes.len();
    let inverses = codes
        .iter()
        .map(|&c| index[&domain.inv(c)])
        .collect::<Vec<u32>>();
    let generators = gen_codes.iter().map(|&g| index[&g]).collect();
    let mut table = GroupTable {
        order,
        backing: Backing::Concrete {
            domain,
            codes,
            index,
        },
        inverses,
        mult_table: None,
        generators,
    };
    table.maybe_cache();
    Ok(Arc::new(table))
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    #[inline]
    pub fn mult(&self, i: usize, j: usize) -> usize {
        if let Some(t) = &self.mult_table {
            return t[i * self.order + j] as usize;
        }
        self.mult_raw(i, j)
    }

    fn mult_raw(&self, i: usize, j: usize) -> usize {
        match &self.backing {
            Backing::Concrete {
                domain,
                codes,
                index,
            } => index[&domain.mul(codes[i], codes[j])] as usize,
            Backing::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.mult(reps[i] as usize, reps[j] as usize)] as usize,
            Backing::Sub {
                parent,
                members,
                pos,
            } => {
                let p = parent.mult(members[i] as usize, members[j] as usize);
                let s = pos[p];
                debug_assert!(s != 0, "subgroup is not closed");
                (s - 1) as usize
            }
        }
    }

    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    /// x^-1 * a * x
    #[inline]
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mult(self.mult(self.inverse(x), a), x)
    }

    pub fn power(&self, i: usize, e: u64) -> usize {
        let mut base = i;
        let mut acc = 0usize;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mult(acc, base);
            }
            base = self.mult(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut n = 1;
        while x != 0 {
            x = self.mult(x, i);
            n += 1;
        }
        n
    }

    fn maybe_cache(&mut self) {
        if self.order <= MULT_CACHE_LIMIT {
            let n = self.order;
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[i * n + j] = self.mult_raw(i, j) as u32;
                }
            }
            self.mult_table = Some(t);
        }
    }

    /// The element's canonical encoding in the concrete domain this
    /// table ultimately lives over (representatives for quotients).
    pub fn code_of(&self, i: usize) -> u64 {
        match &self.backing {
            Backing::Concrete { codes, .. } => codes[i],
            Backing::Quotient { parent, reps, .. } => parent.code_of(reps[i] as usize),
            Backing::Sub {
                parent, members, ..
            } => parent.code_of(members[i] as usize),
        }
    }

    pub fn domain(&self) -> &Domain {
        match &self.backing {
            Backing::Concrete { domain, .. } => domain,
            Backing::Quotient { parent, .. } => parent.domain(),
            Backing::Sub { parent, .. } => parent.domain(),
        }
    }

    /// Index of a concrete element code, if present. For quotients this
    /// is the index of the coset containing the element.
    pub fn index_of_code(&self, code: u64) -> Option<usize> {
        match &self.backing {
            Backing::Concrete { index, .. } => index.get(&code).map(|&i| i as usize),
            Backing::Quotient {
                parent, coset_of, ..
            } => parent
                .index_of_code(code)
                .map(|p| coset_of[p] as usize),
            Backing::Sub {
                parent,
                pos,
                ..
            } => parent.index_of_code(code).and_then(|p| {
                let s = pos[p];
                if s == 0 {
                    None
                } else {
                    Some((s - 1) as usize)
                }
            }),
        }
    }

    pub fn element(&self, i: usize) -> Element {
        Element {
            domain: self.domain().clone(),
            code: self.code_of(i),
        }
    }

    pub fn describe_element(&self, i: usize) -> String {
        self.domain().code_to_string(self.code_of(i))
    }

    /// Partition of all indices into conjugacy classes, each sorted,
    /// classes ordered by least member. The identity's class is {0}.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let n = self.order;
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        let gens = self.generators.clone();
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            let mut class = vec![start as u32];
            assigned[start] = true;
            let mut cursor = 0;
            while cursor < class.len() {
                let x = class[cursor] as usize;
                cursor += 1;
                for &g in &gens {
                    let y = self.conj(x, g as usize);
                    if !assigned[y] {
                        assigned[y] = true;
                        class.push(y as u32);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }
}

/// Result of a quotient construction: the coset group plus the natural
/// projection (parent index -> quotient index) and a section picking
/// each coset's canonical representative (least parent index).
pub struct Quotient {
    pub group: Arc<GroupTable>,
    pub projection: Vec<u32>,
    pub section: Vec<u32>,
}

/// Quotient by a normal subgroup given as a membership bit-vector.
pub fn quotient_group(parent: &Arc<GroupTable>, n: &BitVec) -> Result<Quotient, GroupError> {
    if n.len() != parent.order() || !n.get(0) {
        return Err(GroupError::NotSubgroup);
    }
    if !is_closed_subgroup(parent, n) {
        return Err(GroupError::NotSubgroup);
    }
    if !is_normal(parent, n) {
        return Err(GroupError::NotNormal);
    }
    let order = parent.order();
    let mut coset_of = vec![u32::MAX; order];
    let mut reps = Vec::new();
    for i in 0..order {
        if coset_of[i] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(i as u32);
        for m in n.iter_ones() {
            coset_of[parent.mult(i, m)] = id;
        }
    }
    let q_order = reps.len();
    let q_backing = Backing::Quotient {
        parent: parent.clone(),
        reps: reps.clone(),
        coset_of: coset_of.clone(),
    };
    let mut inverses = vec![0u32; q_order];
    for (qi, &rep) in reps.iter().enumerate() {
        inverses[qi] = coset_of[parent.inverse(rep as usize)];
    }
    let generators: Vec<u32> = {
        let mut gs: Vec<u32> = parent
            .generators()
            .iter()
            .map(|&g| coset_of[g as usize])
            .filter(|&g| g != 0)
            .collect();
        gs.dedup();
        if gs.is_empty() {
            gs.push(0);
        }
        gs
    };
    let mut table = GroupTable {
        order: q_order,
        backing: q_backing,
        inverses,
        mult_table: None,
        generators,
    };
    table.maybe_cache();
    Ok(Quotient {
        group: Arc::new(table),
        projection: coset_of,
        section: reps,
    })
}

/// A subgroup re-indexed as a standalone table; `members` maps
/// sub-indices back into the parent.
pub struct SubTable {
    pub group: Arc<GroupTable>,
    pub members: Vec<u32>,
}

pub fn subgroup_table(parent: &Arc<GroupTable>, s: &BitVec) -> Result<SubTable, GroupError> {
    if s.len() != parent.order() || !s.get(0) {
        return Err(GroupError::NotSubgroup);
    }
    if !is_closed_subgroup(parent, s) {
        return Err(GroupError::NotSubgroup);
    }
    let members: Vec<u32> = s.iter_ones().map(|i| i as u32).collect();
    let mut pos = vec![0u32; parent.order()];
    for (si, &p) in members.iter().enumerate() {
        pos[p as usize] = si as u32 + 1;
    }
    let order = members.len();
    let inverses: Vec<u32> = members
        .iter()
        .map(|&m| pos[parent.inverse(m as usize)] - 1)
        .collect();
    // small generating set found greedily
    let gen_parent = generating_set_in(parent, s);
    let generators: Vec<u32> = if gen_parent.is_empty() {
        vec![0]
    } else {
        gen_parent.iter().map(|&g| pos[g] - 1).collect()
    };
    let mut table = GroupTable {
        order,
        backing: Backing::Sub {
            parent: parent.clone(),
            members: members.clone(),
            pos,
        },
        inverses,
        mult_table: None,
        generators,
    };
    table.maybe_cache();
    Ok(SubTable {
        group: Arc::new(table),
        members,
    })
}

pub fn is_closed_subgroup(parent: &GroupTable, s: &BitVec) -> bool {
    if !s.get(0) {
        return false;
    }
    let members: Vec<usize> = s.iter_ones().collect();
    // closure under product with a generating set of s suffices, but a
    // wrong input may not be a subgroup at all, so check all pairs
    // against membership for small sets and generators otherwise.
    let gens = generating_set_in(parent, s);
    for &m in &members {
        if !s.get(parent.inverse(m)) {
            return false;
        }
        for &g in &gens {
            if !s.get(parent.mult(m, g)) {
                return false;
            }
        }
    }
    // a set closed under right multiplication by generators of the
    // subgroup it generates, containing 1, is that subgroup iff sizes
    // match; the greedy generating set generates a subgroup whose
    // closure we can count cheaply
    closure_size_matches(parent, &gens, members.len())
}

fn closure_size_matches(parent: &GroupTable, gens: &[usize], expected: usize) -> bool {
    let mut seen = BitVec::new(parent.order());
    seen.set(0);
    let mut stack = vec![0usize];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = parent.mult(x, g);
            if seen.set(y) {
                count += 1;
                if count > expected {
                    return false;
                }
                stack.push(y);
            }
        }
    }
    count == expected
}

/// Greedy small generating set for a subgroup bit-vector: repeatedly
/// adds the least member outside the current closure.
pub fn generating_set_in(parent: &GroupTable, s: &BitVec) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = BitVec::new(parent.order());
    closed.set(0);
    let mut closed_count = 1usize;
    let total = s.count();
    while closed_count < total {
        let next = s
            .iter_ones()
            .find(|&i| !closed.get(i))
            .expect("member outside closure must exist");
        gens.push(next);
        // re-close
        let mut stack: Vec<usize> = closed.iter_ones().collect();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = parent.mult(x, g);
                if closed.set(y) {
                    closed_count += 1;
                    stack.push(y);
                }
            }
        }
    }
    gens
}

pub fn is_normal(parent: &GroupTable, s: &BitVec) -> bool {
    let gens: Vec<usize> = parent.generators().iter().map(|&g| g as usize).collect();
    let sub_gens = generating_set_in(parent, s);
    for &g in &gens {
        for &m in &sub_gens {
            if !s.get(parent.conj(m, g)) {
                return false;
            }
        }
    }
    true
}
