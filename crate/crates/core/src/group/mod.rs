//! Small finite groups given by Cayley tables.
//!
//! Groups are immutable after construction and shared through [`GroupRef`].
//! Every group carries a process-unique id; two groups are the *same* object
//! only when their ids agree, which is what morphism tags compare.

mod catalog;
mod hom;
mod subgroup;

pub use catalog::{catalog_representative, CATALOG};
pub use hom::{automorphisms, homomorphisms, is_isomorphic, AutGroup, GroupMap, HomFilter};
pub use subgroup::{
    conjugacy_classes_of_subgroups, quotient, sections, subgroups, subgroups_within, Quotient,
    Section, Subgroup,
};

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::bits::ElemSet;
use crate::error::{Error, Result};

pub type GroupRef = Arc<Group>;

/// Default cap on the order of groups accepted from specs.
pub const DEFAULT_ORDER_CAP: usize = 64;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub struct Group {
    id: u64,
    name: String,
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    elem_order: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl Group {
    /// Builds a group from a full multiplication table, validating the group
    /// axioms. Associativity is checked exhaustively up to order 64 and on a
    /// deterministic sample of triples above that.
    pub fn from_table(
        name: impl Into<String>,
        rows: &[Vec<usize>],
        identity: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if identity >= n {
            return Err(Error::InvalidTable(format!("identity index {identity} out of range")));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!("row {i} is not a permutation")));
                }
                table.push(x as u32);
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                if std::mem::replace(&mut seen[table[i * n + j] as usize], true) {
                    return Err(Error::InvalidTable(format!("column {j} is not a permutation")));
                }
            }
        }
        for x in 0..n {
            if table[identity * n + x] as usize != x || table[x * n + identity] as usize != x {
                return Err(Error::InvalidTable(format!(
                    "index {identity} does not act as the identity"
                )));
            }
        }
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        let check = |a: usize, b: usize, c: usize| mul(mul(a, b), c) == mul(a, mul(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::InvalidTable(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // Deterministic LCG sample.
            let mut state = 0x9e37_79b9_7f4a_7c15u64;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize % n
            };
            for _ in 0..20_000 {
                let (a, b, c) = (next(), next(), next());
                if !check(a, b, c) {
                    return Err(Error::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::InvalidTable("label count differs from order".into()));
            }
        }
        Ok(Self::from_trusted(name.into(), n, table, identity, labels))
    }

    /// Builds a group from a table already known to satisfy the axioms.
    pub(crate) fn from_trusted(
        name: String,
        order: usize,
        table: Vec<u32>,
        identity: usize,
        labels: Option<Vec<String>>,
    ) -> Group {
        let n = order;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] as usize == identity {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        let mut elem_order = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != identity {
                x = table[x * n + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }
        Group {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name,
            order,
            table,
            identity,
            inverse,
            elem_order,
            labels,
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g a g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        self.elem_order
            .iter()
            .fold(1usize, |acc, &o| num::integer::lcm(acc, o as usize))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elem_order.iter().any(|&o| o as usize == self.order)
    }

    /// Sorted multiset of element orders, a cheap isomorphism invariant.
    pub fn order_census(&self) -> Vec<u32> {
        let mut v = self.elem_order.clone();
        v.sort_unstable();
        v
    }

    /// Subgroup generated by `gens` (the closure under multiplication).
    pub fn closure<I: IntoIterator<Item = usize>>(&self, gens: I) -> ElemSet {
        let gens: Vec<usize> = gens.into_iter().collect();
        self.extend_closure(&ElemSet::from_indices(self.order, [self.identity]), &gens)
    }

    /// Closure of an existing subgroup `base` together with extra generators.
    pub fn extend_closure(&self, base: &ElemSet, extra: &[usize]) -> ElemSet {
        let mut set = base.clone();
        let mut gens: Vec<usize> = extra.iter().copied().filter(|&g| !base.contains(g)).collect();
        if gens.is_empty() {
            return set;
        }
        // Old members also act as generators once new elements appear.
        gens.extend(base.iter().filter(|&g| g != self.identity));
        let mut frontier: Vec<usize> = set.iter().collect();
        for &g in extra {
            if set.insert(g) {
                frontier.push(g);
            }
        }
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// A deterministic small generating set: scan elements by decreasing
    /// order (ties by index) and keep each one not already generated.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = ElemSet::from_indices(self.order, [self.identity]);
        let mut by_order: Vec<usize> = (0..self.order).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.elem_order[a]), a));
        for a in by_order {
            if current.len() == self.order {
                break;
            }
            if !current.contains(a) {
                current = self.extend_closure(&current, &[a]);
                gens.push(a);
            }
        }
        gens
    }

    /// The full subgroup as a bitset.
    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.order)
    }

    /// The trivial subgroup as a bitset.
    pub fn trivial(&self) -> ElemSet {
        ElemSet::from_indices(self.order, [self.identity])
    }

    /// Serializes the group as a Cayley-table document.
    pub fn to_cayley_text(&self) -> String {
        let mut out = format!("order {}\nidentity {}\n", self.order, self.identity);
        if let Some(l) = &self.labels {
            out.push_str("labels ");
            out.push_str(&l.join(" "));
            out.push('\n');
        }
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses a Cayley-table document: an `order N` line, an `identity I`
    /// line, an optional `labels ...` line, then N rows of N indices. Blank
    /// lines and `#` comments are ignored.
    pub fn from_cayley_text(name: impl Into<String>, text: &str) -> Result<Group> {
        let bad = |m: &str| Error::InvalidTable(m.to_string());
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let mut field = |key: &str| -> Result<usize> {
            let line = lines.next().ok_or_else(|| bad("truncated document"))?;
            let rest = line
                .strip_prefix(key)
                .ok_or_else(|| bad(&format!("expected `{key}` line")))?;
            rest.trim().parse().map_err(|_| bad(&format!("bad `{key}` value")))
        };
        let order = field("order")?;
        let identity = field("identity")?;
        let mut labels = None;
        let mut rows = Vec::with_capacity(order);
        for line in lines {
            if let Some(rest) = line.strip_prefix("labels") {
                labels = Some(rest.split_whitespace().map(String::from).collect());
                continue;
            }
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad("non-integer table entry")))
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        if rows.len() != order {
            return Err(bad(&format!("expected {order} rows, found {}", rows.len())));
        }
        Group::from_table(name, &rows, identity, labels)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Group {}

impl Hash for Group {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(order {})", self.name, self.order)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Cyclic group of order `n`, elements `0..n` under addition mod `n`.
pub fn cyclic(n: usize) -> Group {
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
        .collect();
    let labels = (0..n).map(|k| format!("g{k}")).collect();
    Group::from_trusted(format!("C{n}"), n, table, 0, Some(labels))
}

/// Dihedral group of order `n` (so `n/2` rotations). `n` must be even.
pub fn dihedral(n: usize) -> Result<Group> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::MalformedSpec(format!("D{n}: dihedral order must be even")));
    }
    let m = n / 2;
    // r^i s^j stored at i + m*j.
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a, b) = (x % m, x / m);
        for y in 0..n {
            let (c, d) = (y % m, y / m);
            let rot = if b == 0 { (a + c) % m } else { (a + m - c) % m };
            table.push((rot + m * ((b + d) % 2)) as u32);
        }
    }
    let labels = (0..n)
        .map(|x| {
            let (a, b) = (x % m, x / m);
            match (a, b) {
                (0, 0) => "e".to_string(),
                (_, 0) => format!("r{a}"),
                (0, _) => "s".to_string(),
                _ => format!("r{a}s"),
            }
        })
        .collect();
    Ok(Group::from_trusted(format!("D{n}"), n, table, 0, Some(labels)))
}

/// Symmetric group on `n` points, permutations in lexicographic order.
pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 || n > 5 {
        return Err(Error::MalformedSpec(format!("S{n}: supported degrees are 1..=5")));
    }
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        perms.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect();
    let order = perms.len();
    let mut table = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            // (a b)(x) = a(b(x))
            let c: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
            table.push(index[&c] as u32);
        }
    }
    let labels = perms
        .iter()
        .map(|q| q.iter().map(|x| (x + 1).to_string()).collect::<String>())
        .collect();
    Ok(Group::from_trusted(format!("S{n}"), order, table, 0, Some(labels)))
}

/// Quaternion group of order 8.
pub fn quaternion() -> Group {
    // Units 1,i,j,k indexed 0..4, sign bit adds 4.
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (u, neg) = UNIT[x % 4][y % 4];
            let sign = (x >= 4) ^ (y >= 4) ^ neg;
            table.push((u + if sign { 4 } else { 0 }) as u32);
        }
    }
    let labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Group::from_trusted("Q8".into(), 8, table, 0, Some(labels))
}

/// Direct product `F x G`; the pair `(f, g)` is stored at `f * |G| + g`.
/// Returns the product together with the two coordinate injections.
pub fn direct_product(f: &GroupRef, g: &GroupRef) -> (GroupRef, GroupMap, GroupMap) {
    let p = Arc::new(direct_product_group(f, g));
    let m = g.order();
    let left = GroupMap::new_unchecked(
        p.clone(),
        f.clone(),
        f.elements().map(|a| a * m + g.identity()).collect(),
    );
    let right = GroupMap::new_unchecked(
        p.clone(),
        g.clone(),
        g.elements().map(|b| f.identity() * m + b).collect(),
    );
    (p, left, right)
}

pub(crate) fn direct_product_group(f: &Group, g: &Group) -> Group {
    let (n, m) = (f.order(), g.order());
    let mut table = Vec::with_capacity(n * m * n * m);
    for a in 0..n * m {
        for b in 0..n * m {
            table.push((f.mul(a / m, b / m) * m + g.mul(a % m, b % m)) as u32);
        }
    }
    let labels = match (f.labels(), g.labels()) {
        (Some(lf), Some(lg)) => Some(
            (0..n * m)
                .map(|a| format!("({},{})", lf[a / m], lg[a % m]))
                .collect(),
        ),
        _ => None,
    };
    Group::from_trusted(
        format!("{}x{}", f.name(), g.name()),
        n * m,
        table,
        f.identity() * m + g.identity(),
        labels,
    )
}

/// Parses the group-spec mini-language: `C<n>`, `D<n>` (order `n`), `S<n>`,
/// `Q8`, `V4`, and `x`-joined products such as `C2xC2xC3`.
pub fn parse_group(spec: &str) -> Result<Group> {
    let spec = spec.trim();
    let parts: Vec<&str> = spec.split('x').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::MalformedSpec(spec.to_string()));
    }
    let mut factors = parts.iter().map(|p| parse_factor(p));
    let first = factors.next().unwrap()?;
    let mut acc = first;
    for next in factors {
        let next = next?;
        acc = direct_product_group(&acc, &next);
    }
    let mut acc = acc;
    acc.name = spec.to_string();
    Ok(acc)
}

fn parse_factor(s: &str) -> Result<Group> {
    let bad = || Error::MalformedSpec(s.to_string());
    match s {
        "Q8" => return Ok(quaternion()),
        "V4" => {
            let c2 = cyclic(2);
            let mut v = direct_product_group(&c2, &c2);
            v.name = "V4".into();
            return Ok(v);
        }
        _ => {}
    }
    let (head, digits) = s.split_at(1);
    let n: usize = digits.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    match head {
        "C" => Ok(cyclic(n)),
        "D" => dihedral(n),
        "S" => symmetric(n),
        _ => Err(bad()),
    }
}

/// Builds a validated group from a spec string or, with a `file:` prefix, a
/// Cayley-table document on disk, enforcing the order cap.
pub fn make_group(spec: &str, order_cap: usize) -> Result<GroupRef> {
    let g = if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MalformedSpec(format!("{spec}: {e}")))?;
        Group::from_cayley_text(spec, &text)?
    } else {
        parse_group(spec)?
    };
    if g.order() > order_cap {
        return Err(Error::OrderCap { order: g.order(), cap: order_cap });
    }
    Ok(Arc::new(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(g: &Group) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for o in g.order_census() {
            match out.last_mut() {
                Some((k, c)) if *k == o => *c += 1,
                _ => out.push((o, 1)),
            }
        }
        out
    }

    #[test]
    fn trivial_and_cyclic() {
        let c1 = parse_group("C1").unwrap();
        assert_eq!(c1.order(), 1);
        let c4 = parse_group("C4").unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(c4.mul(a, b), (a + b) % 4);
            }
        }
    }

    #[test]
    fn s3_order_census() {
        let s3 = parse_group("S3").unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(census(&s3), vec![(1, 1), (2, 3), (3, 2)]);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn named_constructors_validate_as_tables() {
        for spec in ["C6", "D8", "D12", "S4", "Q8", "V4", "C2xC2xC3", "D2", "S1"] {
            let g = parse_group(spec).unwrap();
            let rows: Vec<Vec<usize>> = (0..g.order())
                .map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect())
                .collect();
            Group::from_table(spec, &rows, g.identity(), None).unwrap();
        }
        assert_eq!(census(&parse_group("Q8").unwrap()), vec![(1, 1), (2, 1), (4, 6)]);
        assert_eq!(census(&parse_group("D8").unwrap()), vec![(1, 1), (2, 5), (4, 2)]);
    }

    #[test]
    fn products() {
        let c2c2 = parse_group("C2xC2").unwrap();
        assert_eq!(c2c2.order(), 4);
        assert_eq!(c2c2.exponent(), 2);
        let c2c3 = parse_group("C2xC3").unwrap();
        assert!(c2c3.is_cyclic());
        let f = Arc::new(parse_group("S3").unwrap());
        let one = Arc::new(parse_group("C1").unwrap());
        let (p, _, _) = direct_product(&f, &one);
        assert_eq!(p.order(), 6);
        assert!(is_isomorphic(&p, &f).is_some());
    }

    #[test]
    fn malformed_specs() {
        for spec in ["", "C", "X3", "D5", "CxC2", "C0", "S9"] {
            assert!(parse_group(spec).is_err(), "{spec}");
        }
        assert!(matches!(
            make_group("C65", DEFAULT_ORDER_CAP),
            Err(Error::OrderCap { order: 65, .. })
        ));
    }

    #[test]
    fn cayley_document_round_trip_and_errors() {
        let g = parse_group("S3").unwrap();
        let text = g.to_cayley_text();
        let (g, h) = (Arc::new(g), Arc::new(Group::from_cayley_text("S3", &text).unwrap()));
        assert_eq!(h.order(), 6);
        assert!(is_isomorphic(&g, &h).is_some());

        let nonassoc = "order 3\nidentity 0\n0 1 2\n1 0 2\n2 2 0\n";
        assert!(Group::from_cayley_text("bad", nonassoc).is_err());
        let no_identity = "order 2\nidentity 1\n0 1\n1 0\n";
        assert!(Group::from_cayley_text("bad", no_identity).is_err());
        // Latin square, has identity, but not associative.
        let loop5 = "order 5\nidentity 0\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        assert!(matches!(
            Group::from_cayley_text("loop", loop5),
            Err(Error::InvalidTable(m)) if m.contains("associative")
        ));
    }
}
