//! Finite groups given by multiplication tables.

use crate::error::{Error, Result};
use crate::imat::IMat;
use crate::presentation::{abelian_group_from_relations, PresentedGroup};

/// A finite group: multiplication table, inverses, element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    id: usize,
    pub labels: Vec<String>,
}

impl FinGroup {
    /// Builds from a table and verifies the group axioms by exhaustion.
    pub fn from_table(mul: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|r| r.len() != n) || labels.len() != n {
            return Err(Error::Invalid("multiplication table shape".into()));
        }
        if mul.iter().flatten().any(|&v| v >= n) {
            return Err(Error::Invalid("table entry out of range".into()));
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::Invalid("no identity element".into()))?;
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mul[g][h] == id && mul[h][g] == id)
                .ok_or_else(|| Error::Invalid(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::Invalid(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FinGroup { mul, inv, id, labels })
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for g in gens {
            if g.len() != degree {
                return Err(Error::Invalid("permutation degree mismatch".into()));
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if v >= degree || seen[v] {
                    return Err(Error::Invalid("not a permutation".into()));
                }
                seen[v] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![identity];
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            let base = elems[i].clone();
            for g in gens {
                let prod: Vec<usize> = (0..degree).map(|x| g[base[x]]).collect();
                if !elems.contains(&prod) {
                    elems.push(prod);
                    frontier.push(elems.len() - 1);
                }
            }
            if elems.len() > 10_000 {
                return Err(Error::TooLarge("permutation group closure".into()));
            }
        }
        elems.sort();
        let n = elems.len();
        let mut mul = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..degree).map(|x| elems[a][elems[b][x]]).collect();
                mul[a][b] = elems.iter().position(|e| *e == prod).unwrap();
            }
        }
        let labels = elems.iter().map(|e| format!("{e:?}")).collect();
        Self::from_table(mul, labels)
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn inversion_involution(&self) -> Vec<usize> {
        self.inv.clone()
    }

    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        // h^{-1} g h
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn conjugacy_class(&self, g: usize) -> Vec<usize> {
        let mut class: Vec<usize> = (0..self.order()).map(|h| self.conjugate(h, g)).collect();
        class.sort_unstable();
        class.dedup();
        class
    }

    /// Conjugacy classes of elements with `g^2 = 1`, identity included.
    /// Returns `(representative, class size, centralizer)` per class; the
    /// representative is the least element index of its class.
    pub fn involution_classes(&self) -> Vec<(usize, usize, FinGroup)> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if self.mul(g, g) != self.id || seen[g] {
                continue;
            }
            let class = self.conjugacy_class(g);
            for &h in &class {
                seen[h] = true;
            }
            out.push((g, class.len(), self.centralizer(g)));
        }
        out
    }

    /// Centralizer of g as a group in its own right.
    pub fn centralizer(&self, g: usize) -> FinGroup {
        let members: Vec<usize> =
            (0..self.order()).filter(|&h| self.mul(h, g) == self.mul(g, h)).collect();
        self.subgroup(&members)
    }

    /// Subgroup on the given closed subset of element indices.
    pub fn subgroup(&self, members: &[usize]) -> FinGroup {
        let pos = |g: usize| members.iter().position(|&m| m == g).expect("subset not closed");
        let n = members.len();
        let mut mul = vec![vec![0usize; n]; n];
        for (a, &ga) in members.iter().enumerate() {
            for (b, &gb) in members.iter().enumerate() {
                mul[a][b] = pos(self.mul(ga, gb));
            }
        }
        let labels = members.iter().map(|&g| self.labels[g].clone()).collect();
        FinGroup::from_table(mul, labels).expect("subgroup table")
    }

    /// Abelianization presented by one relation per product in the table.
    pub fn abelianization(&self) -> PresentedGroup {
        let n = self.order();
        let mut rows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let mut row = vec![0i128; n];
                row[a] += 1;
                row[b] += 1;
                row[self.mul(a, b)] -= 1;
                rows.push(row);
            }
        }
        abelian_group_from_relations(n, &IMat::from_rows(rows))
    }

    pub fn cyclic(n: usize) -> FinGroup {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        FinGroup::from_table(mul, labels).expect("cyclic table")
    }

    /// Symmetric group on three letters, as permutations of {0,1,2}.
    pub fn symmetric3() -> FinGroup {
        FinGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    /// Dihedral group of order 8 (symmetries of the square).
    pub fn dihedral4() -> FinGroup {
        FinGroup::from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 3, 2]]).expect("D4")
    }

    /// Quaternion group of order 8.
    pub fn quaternion8() -> FinGroup {
        // elements 1, -1, i, -i, j, -j, k, -k
        let labels: Vec<String> =
            ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        let neg = |x: usize| x ^ 1;
        let base_mul = |a: usize, b: usize| -> usize {
            // on the positives {1:0, i:2, j:4, k:6}; returns a signed index
            match (a, b) {
                (0, y) => y,
                (x, 0) => x,
                (2, 2) | (4, 4) | (6, 6) => 1, // i^2 = j^2 = k^2 = -1
                (2, 4) => 6,                   // ij = k
                (4, 2) => 7,                   // ji = -k
                (4, 6) => 2,                   // jk = i
                (6, 4) => 3,                   // kj = -i
                (6, 2) => 4,                   // ki = j
                (2, 6) => 5,                   // ik = -j
                _ => unreachable!(),
            }
        };
        let mut mul = vec![vec![0usize; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let mut v = base_mul(a & !1, b & !1);
                if a & 1 == 1 {
                    v = neg(v);
                }
                if b & 1 == 1 {
                    v = neg(v);
                }
                mul[a][b] = v;
            }
        }
        FinGroup::from_table(mul, labels).expect("Q8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        assert_eq!(FinGroup::cyclic(4).order(), 4);
        assert_eq!(FinGroup::symmetric3().order(), 6);
        assert_eq!(FinGroup::dihedral4().order(), 8);
        assert_eq!(FinGroup::quaternion8().order(), 8);
    }

    #[test]
    fn s3_involution_classes() {
        let s3 = FinGroup::symmetric3();
        let classes = s3.involution_classes();
        assert_eq!(classes.len(), 2);
        let (_, size_e, cent_e) = &classes[0];
        assert_eq!(*size_e, 1);
        assert_eq!(cent_e.order(), 6);
        let (_, size_t, cent_t) = &classes[1];
        assert_eq!(*size_t, 3);
        assert_eq!(cent_t.order(), 2);
    }

    #[test]
    fn q8_involution_classes() {
        let q8 = FinGroup::quaternion8();
        let classes = q8.involution_classes();
        // -1 is the unique non-identity involution and is central
        assert_eq!(classes.len(), 2);
        for (_, size, cent) in &classes {
            assert_eq!(*size, 1);
            assert_eq!(cent.order(), 8);
        }
    }

    #[test]
    fn d4_involution_classes() {
        let d4 = FinGroup::dihedral4();
        let classes = d4.involution_classes();
        assert_eq!(classes.len(), 4);
        let sizes: Vec<usize> = classes.iter().map(|c| c.1).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 2, 2]);
        for (_, _, cent) in &classes {
            assert!(cent.order() == 8 || cent.order() == 4);
        }
    }

    #[test]
    fn abelianizations() {
        assert_eq!(FinGroup::symmetric3().abelianization(), PresentedGroup::torsion_only(vec![2]));
        assert_eq!(
            FinGroup::quaternion8().abelianization(),
            PresentedGroup::torsion_only(vec![2, 2])
        );
        assert_eq!(FinGroup::cyclic(4).abelianization(), PresentedGroup::torsion_only(vec![4]));
        assert_eq!(
            FinGroup::dihedral4().abelianization(),
            PresentedGroup::torsion_only(vec![2, 2])
        );
    }

    #[test]
    fn bad_tables_rejected() {
        // non-associative magma
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(FinGroup::from_table(t, vec!["e".into(), "a".into()]).is_err());
    }
}
