//! Galois actions on the lines, given as permutations of line indices.

use super::linalg::{det_int, for_each_subset, integer_kernel, solve_columns, to_q};
use super::pic::{LineClassSet, PicLattice};
use crate::error::{domain, Error, Result};
use num_integer::Integer;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub generators: Vec<Vec<usize>>,
}

/// Orbits of the line indices, each sorted, listed by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbits {
    pub orbits: Vec<Vec<usize>>,
}

/// `Pic(X) = Pic(X_kbar)^G` as a saturated sublattice, basis vectors in
/// ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantLattice {
    pub basis: Vec<Vec<i128>>,
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidAction(msg.into()))
}

impl GroupAction {
    pub fn trivial() -> Self {
        GroupAction { generators: Vec::new() }
    }

    /// The permutation of lines induced by a Weyl group element given as a
    /// product of root reflections (rightmost applied first).
    pub fn weyl_element(pic: &PicLattice, lines: &LineClassSet, roots: &[Vec<i128>]) -> Vec<usize> {
        lines
            .classes
            .iter()
            .map(|l| {
                let image = roots.iter().rev().fold(l.clone(), |x, r| pic.reflect(&x, r));
                lines.index_of(&image).expect("reflections permute the lines")
            })
            .collect()
    }

    /// The whole Weyl group, generated by the reflections in every root.
    pub fn full_weyl(pic: &PicLattice) -> Self {
        let lines = pic.lines();
        let generators = pic.roots().iter().map(|r| Self::weyl_element(pic, &lines, std::slice::from_ref(r))).collect();
        GroupAction { generators }
    }

    /// Complex conjugation on a quartic surface whose lines split into eight
    /// rational lines and four conjugate pairs: the reflection in
    /// `e4 - e5`, which swaps `e4` and `e5`.
    pub fn conj_q_i(pic: &PicLattice) -> Result<Self> {
        if pic.degree != 4 {
            return domain("the conjugation action is defined for degree 4");
        }
        let mut root = vec![0; pic.rank];
        root[4] = 1;
        root[5] = -1;
        Ok(GroupAction { generators: vec![Self::weyl_element(pic, &pic.lines(), &[root])] })
    }

    /// Cycle notation, one generator per non-empty line, e.g. `(0 1)(2 3)`.
    /// Indices are 0-based and fixed points may be omitted.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut generators = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut perm: Vec<usize> = (0..n).collect();
            let mut seen = vec![false; n];
            let mut rest = line;
            while let Some(open) = rest.find('(') {
                if !rest[..open].trim().is_empty() {
                    return invalid(format!("line {}: text outside a cycle", lineno + 1));
                }
                let Some(close) = rest[open..].find(')') else {
                    return invalid(format!("line {}: unclosed cycle", lineno + 1));
                };
                let body = &rest[open + 1..open + close];
                let cycle: Vec<usize> = body
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::InvalidAction(format!("line {}: {e}", lineno + 1)))?;
                for &i in &cycle {
                    if i >= n {
                        return invalid(format!("line {}: index {i} out of range 0..{n}", lineno + 1));
                    }
                    if std::mem::replace(&mut seen[i], true) {
                        return invalid(format!("line {}: index {i} repeated", lineno + 1));
                    }
                }
                for k in 0..cycle.len() {
                    perm[cycle[k]] = cycle[(k + 1) % cycle.len()];
                }
                rest = &rest[open + close + 1..];
            }
            if !rest.trim().is_empty() {
                return invalid(format!("line {}: trailing text", lineno + 1));
            }
            generators.push(perm);
        }
        Ok(GroupAction { generators })
    }

    /// `w g w^-1` for every generator `g`.
    pub fn conjugate(&self, w: &[usize]) -> Self {
        let mut inv = vec![0; w.len()];
        for (i, &j) in w.iter().enumerate() {
            inv[j] = i;
        }
        let generators = self.generators.iter().map(|g| (0..w.len()).map(|i| w[g[inv[i]]]).collect()).collect();
        GroupAction { generators }
    }

    /// Checks every generator and returns the matrices (rows indexed like
    /// the ambient basis) that realise them on the lattice.
    pub fn validate(&self, pic: &PicLattice, lines: &LineClassSet) -> Result<Vec<Vec<Vec<i128>>>> {
        let n = lines.len();
        let mut mats = Vec::new();
        for (gi, g) in self.generators.iter().enumerate() {
            if g.len() != n {
                return invalid(format!("generator {gi} has length {}, expected {n}", g.len()));
            }
            let mut hit = vec![false; n];
            for &j in g {
                if j >= n || std::mem::replace(&mut hit[j], true) {
                    return invalid(format!("generator {gi} is not a permutation"));
                }
            }
            for i in 0..n {
                for j in i..n {
                    let (a, b) = (&lines.classes[i], &lines.classes[j]);
                    let (c, d) = (&lines.classes[g[i]], &lines.classes[g[j]]);
                    if pic.pair(a, b) != pic.pair(c, d) {
                        return domain(format!("generator {gi} does not preserve the pairing on lines {i}, {j}"));
                    }
                }
            }
            // Columns: images of l and e_1..e_r, with l = (l - e1 - e2) + e1 + e2.
            let r = pic.rank - 1;
            let img = |v: &[i128]| lines.classes[g[lines.index_of(v).unwrap()]].clone();
            let mut cols: Vec<Vec<i128>> = vec![vec![0; pic.rank]; pic.rank];
            for i in 1..=r {
                let mut e = vec![0; pic.rank];
                e[i] = 1;
                cols[i] = img(&e);
            }
            let mut l12 = vec![0; pic.rank];
            l12[0] = 1;
            l12[1] = -1;
            l12[2] = -1;
            let il = img(&l12);
            cols[0] = (0..pic.rank).map(|k| il[k] + cols[1][k] + cols[2][k]).collect();
            let m: Vec<Vec<i128>> = (0..pic.rank).map(|row| cols.iter().map(|c| c[row]).collect()).collect();
            let apply =
                |x: &[i128]| -> Vec<i128> { m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect() };
            for (i, l) in lines.classes.iter().enumerate() {
                if apply(l) != lines.classes[g[i]] {
                    return domain(format!("generator {gi} is not induced by a lattice map"));
                }
            }
            if apply(&pic.minus_k) != pic.minus_k {
                return domain(format!("generator {gi} moves -K"));
            }
            mats.push(m);
        }
        Ok(mats)
    }
}

pub fn orbit_decompose(action: &GroupAction, pic: &PicLattice, lines: &LineClassSet) -> Result<Orbits> {
    action.validate(pic, lines)?;
    let n = lines.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for g in &action.generators {
        for (i, &j) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    Ok(Orbits { orbits: groups.into_values().collect() })
}

impl Orbits {
    /// `(a1^n1, ..., at^nt)` with orbit sizes ascending.
    pub fn signature(&self) -> String {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for o in &self.orbits {
            *counts.entry(o.len()).or_default() += 1;
        }
        let parts: Vec<String> = counts.iter().map(|(s, n)| format!("{s}^{n}")).collect();
        format!("({})", parts.join(", "))
    }

    pub fn n_singletons(&self) -> usize {
        self.orbits.iter().filter(|o| o.len() == 1).count()
    }
}

pub fn invariant_lattice(action: &GroupAction, pic: &PicLattice, lines: &LineClassSet) -> Result<InvariantLattice> {
    let mats = action.validate(pic, lines)?;
    let mut rows = Vec::new();
    for m in &mats {
        for (i, row) in m.iter().enumerate() {
            let mut r = row.clone();
            r[i] -= 1;
            rows.push(r);
        }
    }
    Ok(InvariantLattice { basis: integer_kernel(&rows, pic.rank) })
}

impl InvariantLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an invariant integral class in this basis.
    pub fn coords(&self, v: &[i128]) -> Option<Vec<i128>> {
        let cols: Vec<_> = self.basis.iter().map(|b| to_q(b)).collect();
        let c = solve_columns(&cols, &to_q(v))?;
        c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }
}

/// `|H^1(G, Pic(X_kbar))|` for a cyclic group given by one generator `s`
/// (or the trivial group): the index of `(1 - s) Pic` in `ker(1 + s + ... + s^(n-1))`.
pub fn h1_cyclic_order(action: &GroupAction, pic: &PicLattice, lines: &LineClassSet) -> Result<u128> {
    let mats = action.validate(pic, lines)?;
    let s = match mats.as_slice() {
        [] => return Ok(1),
        [s] => s,
        _ => return domain("cohomology is implemented for cyclic actions given by one generator"),
    };
    let n = pic.rank;
    let ident: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    let mul = |a: &Vec<Vec<i128>>, b: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    };
    let mut norm = ident.clone();
    let mut power = s.clone();
    while power != ident {
        for i in 0..n {
            for j in 0..n {
                norm[i][j] += power[i][j];
            }
        }
        power = mul(&power, s);
    }
    let ker = InvariantLattice { basis: integer_kernel(&norm, n) };
    let r = ker.rank();
    if r == 0 {
        return Ok(1);
    }
    // Columns of 1 - s, in coordinates of the kernel basis.
    let coords: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let col: Vec<i128> = (0..n).map(|i| ident[i][j] - s[i][j]).collect();
            ker.coords(&col).expect("(1 - s) maps into the kernel of the norm")
        })
        .collect();
    let mut index = 0i128;
    for_each_subset(n, r, &mut |cols| {
        let minor: Vec<Vec<i128>> = cols.iter().map(|&c| coords[c].clone()).collect();
        index = index.gcd(&det_int(&minor));
    });
    if index == 0 {
        return domain("H^1 is infinite");
    }
    Ok(index.unsigned_abs())
}

/// Orbit sums, in coordinates of the invariant lattice.
pub fn effective_generators(orbits: &Orbits, lines: &LineClassSet, inv: &InvariantLattice) -> Vec<Vec<i128>> {
    orbits
        .orbits
        .iter()
        .map(|o| {
            let dim = lines.classes[0].len();
            let sum: Vec<i128> = (0..dim).map(|k| o.iter().map(|&i| lines.classes[i][k]).sum()).collect();
            inv.coords(&sum).expect("orbit sums are invariant")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(deg: u32) -> (PicLattice, LineClassSet) {
        let pic = PicLattice::new(deg).unwrap();
        let lines = pic.lines();
        (pic, lines)
    }

    #[test]
    fn trivial_action() {
        let (pic, lines) = setup(4);
        let o = orbit_decompose(&GroupAction::trivial(), &pic, &lines).unwrap();
        assert_eq!(o.orbits.len(), 16);
        assert_eq!(o.signature(), "(1^16)");
        let inv = invariant_lattice(&GroupAction::trivial(), &pic, &lines).unwrap();
        assert_eq!(inv.rank(), 6);
        let gens = effective_generators(&o, &lines, &inv);
        let back: Vec<Vec<i128>> = gens
            .iter()
            .map(|c| (0..6).map(|k| inv.basis.iter().zip(c).map(|(b, x)| b[k] * x).sum()).collect())
            .collect();
        assert_eq!(back, lines.classes);
    }

    #[test]
    fn conjugation_action() {
        let (pic, lines) = setup(4);
        let act = GroupAction::conj_q_i(&pic).unwrap();
        let o = orbit_decompose(&act, &pic, &lines).unwrap();
        assert_eq!(o.signature(), "(1^8, 2^4)");
        assert_eq!(o.n_singletons(), 8);
        let inv = invariant_lattice(&act, &pic, &lines).unwrap();
        assert_eq!(inv.rank(), 5);
        // Same lattice as the span of l, e1, e2, e3, e4 + e5.
        let expected = [
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 1],
        ];
        for v in &expected {
            assert!(inv.coords(v).is_some());
        }
        let other = InvariantLattice { basis: expected.to_vec() };
        for b in &inv.basis {
            assert!(other.coords(b).is_some());
        }
        let gens = effective_generators(&o, &lines, &inv);
        assert_eq!(gens.len(), 12);
        let kc = inv.coords(&pic.minus_k).unwrap();
        for (orbit, g) in o.orbits.iter().zip(&gens) {
            let ambient: Vec<i128> = (0..6).map(|k| inv.basis.iter().zip(g).map(|(b, x)| b[k] * x).sum()).collect();
            assert_eq!(pic.pair(&ambient, &pic.minus_k), orbit.len() as i128);
        }
        assert_eq!(kc.len(), 5);
    }

    #[test]
    fn full_weyl_group_is_transitive() {
        for (deg, n) in [(4, 16), (3, 27)] {
            let (pic, lines) = setup(deg);
            let act = GroupAction::full_weyl(&pic);
            let o = orbit_decompose(&act, &pic, &lines).unwrap();
            assert_eq!(o.signature(), format!("({n}^1)"));
            assert_eq!(invariant_lattice(&act, &pic, &lines).unwrap().rank(), 1);
        }
    }

    #[test]
    fn pairing_violation_is_rejected() {
        let (pic, lines) = setup(4);
        // Swap e1 with the conic: e1 meets l - e1 - e2, the conic does not.
        let mut g: Vec<usize> = (0..16).collect();
        g.swap(0, 15);
        g.swap(1, 15);
        let bad = GroupAction { generators: vec![g] };
        assert!(matches!(orbit_decompose(&bad, &pic, &lines), Err(Error::Domain(_))));
        let short = GroupAction { generators: vec![vec![0, 1, 2]] };
        assert!(matches!(short.validate(&pic, &lines), Err(Error::InvalidAction(_))));
    }

    /// `|ker N / (1 - s) Pic|` by closing the image inside `(Z/n)^r`, which
    /// suffices because `n ker N` lies in `(1 - s) Pic`.
    fn h1_brute(pic: &PicLattice, lines: &LineClassSet, g: &[usize]) -> Option<u128> {
        let act = GroupAction { generators: vec![g.to_vec()] };
        let s = &act.validate(pic, lines).unwrap()[0];
        let n = pic.rank;
        let mut order = 1;
        let mut p: Vec<usize> = g.to_vec();
        while p.iter().enumerate().any(|(i, &j)| i != j) {
            p = p.iter().map(|&i| g[i]).collect();
            order += 1;
        }
        let mut norm = vec![vec![0i128; n]; n];
        let mut power: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
        for _ in 0..order {
            for i in 0..n {
                for j in 0..n {
                    norm[i][j] += power[i][j];
                }
            }
            power = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| power[i][k] * s[k][j]).sum()).collect()).collect();
        }
        let ker = InvariantLattice { basis: integer_kernel(&norm, n) };
        let r = ker.rank();
        let m = order as i128;
        if (m as u128).pow(r as u32) > 50_000 {
            return None;
        }
        let gens: Vec<Vec<i128>> = (0..n)
            .map(|j| {
                let col: Vec<i128> = (0..n).map(|i| (i == j) as i128 - s[i][j]).collect();
                ker.coords(&col).unwrap().iter().map(|x| x.rem_euclid(m)).collect()
            })
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![vec![0i128; r]];
        seen.insert(vec![0i128; r]);
        while let Some(v) = stack.pop() {
            for gen in &gens {
                let w: Vec<i128> = v.iter().zip(gen).map(|(a, b)| (a + b).rem_euclid(m)).collect();
                if seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        Some((m as u128).pow(r as u32) / seen.len() as u128)
    }

    #[test]
    fn first_cohomology() {
        let (pic, lines) = setup(4);
        let conj = GroupAction::conj_q_i(&pic).unwrap();
        assert_eq!(h1_cyclic_order(&conj, &pic, &lines).unwrap(), 1);
        assert_eq!(h1_cyclic_order(&GroupAction::trivial(), &pic, &lines).unwrap(), 1);
        let roots = pic.roots();
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut nontrivial = 0;
        let mut checked = 0;
        for _ in 0..400 {
            let len = 1 + (next() % 8) as usize;
            let word: Vec<Vec<i128>> =
                (0..len).map(|_| roots[(next() % roots.len() as u64) as usize].clone()).collect();
            let g = GroupAction::weyl_element(&pic, &lines, &word);
            let act = GroupAction { generators: vec![g.clone()] };
            let h = h1_cyclic_order(&act, &pic, &lines).unwrap();
            if let Some(b) = h1_brute(&pic, &lines, &g) {
                assert_eq!(h, b);
                checked += 1;
            }
            assert!([1, 2, 4].contains(&h));
            nontrivial += (h > 1) as u32;
        }
        assert!(nontrivial > 0 && checked > 100, "{nontrivial} {checked}");
    }

    #[test]
    fn cycle_parsing() {
        let a = GroupAction::parse_cycles("(0 1)(2 3 4)\n\n# comment\n(5,6)\n", 8).unwrap();
        assert_eq!(a.generators, vec![vec![1, 0, 3, 4, 2, 5, 6, 7], vec![0, 1, 2, 3, 4, 6, 5, 7]]);
        assert!(GroupAction::parse_cycles("(0 9)", 8).is_err());
        assert!(GroupAction::parse_cycles("(0 1)(1 2)", 8).is_err());
        assert!(GroupAction::parse_cycles("(0 1", 8).is_err());
        assert!(GroupAction::parse_cycles("x(0 1)", 8).is_err());
    }

    #[test]
    fn conjugation_of_the_action_round_trips() {
        let (pic, lines) = setup(4);
        let act = GroupAction::conj_q_i(&pic).unwrap();
        let roots = pic.roots();
        let w = GroupAction::weyl_element(&pic, &lines, &[roots[3].clone(), roots[17].clone()]);
        let c = act.conjugate(&w);
        c.validate(&pic, &lines).unwrap();
        let o = orbit_decompose(&c, &pic, &lines).unwrap();
        assert_eq!(o.signature(), "(1^8, 2^4)");
    }
}
