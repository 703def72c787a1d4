//! Skew-symmetric bicharacters β: G × G → μ_N.
//!
//! Stored as an exponent table on generators: β(g_i, g_j) = ζ_N^{t_ij}.

use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, GroupElement};
use crate::scalars::{lcm, CycloNumber};

#[derive(Clone, Debug)]
pub struct Bicharacter {
    group: FiniteAbelianGroup,
    order: u32,
    table: Vec<Vec<u32>>,
}

/// Equality of values on generators (factor orders must agree; names may differ).
impl PartialEq for Bicharacter {
    fn eq(&self, o: &Self) -> bool {
        if self.group.orders() != o.group.orders() {
            return false;
        }
        let m = lcm(self.order, o.order);
        let (sa, sb) = (m / self.order, m / o.order);
        self.table
            .iter()
            .flatten()
            .zip(o.table.iter().flatten())
            .all(|(a, b)| a * sa == b * sb)
    }
}

impl Eq for Bicharacter {}

impl Bicharacter {
    pub fn new(group: FiniteAbelianGroup, order: u32, table: Vec<Vec<u32>>) -> Result<Self> {
        let r = group.rank();
        if order == 0 {
            return Err(Error::domain("cyclotomic order must be positive"));
        }
        if table.len() != r || table.iter().any(|row| row.len() != r) {
            return Err(Error::domain(
                "bicharacter table must be square over the generators",
            ));
        }
        let table: Vec<Vec<u32>> = table
            .into_iter()
            .map(|row| row.into_iter().map(|t| t % order).collect())
            .collect();
        for i in 0..r {
            for j in 0..r {
                if !(table[i][j] + table[j][i]).is_multiple_of(order) {
                    return Err(Error::domain(format!(
                        "table is not skew-symmetric at ({i},{j})"
                    )));
                }
                let ni = group.orders()[i] as u64;
                if !(ni * table[i][j] as u64).is_multiple_of(order as u64) {
                    return Err(Error::domain(format!(
                        "value at ({i},{j}) is incompatible with generator order {ni}"
                    )));
                }
            }
        }
        Ok(Bicharacter {
            group,
            order,
            table,
        })
    }

    /// Builds the table from cyclotomic values on generator pairs.
    pub fn from_values(group: FiniteAbelianGroup, values: &[Vec<CycloNumber>]) -> Result<Self> {
        let order = values
            .iter()
            .flatten()
            .fold(2, |acc, v| lcm(acc, v.order()));
        let table = values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.lift(order)
                            .root_exponent()
                            .ok_or_else(|| Error::domain(format!("{v} is not a root of unity")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        // Shrink to the smallest order that carries all values.
        let g = table.iter().flatten().fold(order as u64, |acc, &t| {
            crate::scalars::cyclo::gcd(acc, t as u64)
        }) as u32;
        let table = table
            .into_iter()
            .map(|r| r.into_iter().map(|t| t / g).collect())
            .collect();
        Self::new(group, order / g, table)
    }

    pub fn trivial(group: FiniteAbelianGroup) -> Self {
        let r = group.rank();
        Bicharacter {
            group,
            order: 1,
            table: vec![vec![0; r]; r],
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    /// Exponent k with β(g, h) = ζ_N^k.
    pub fn exponent(&self, g: &GroupElement, h: &GroupElement) -> u32 {
        let n = self.order as u64;
        let mut acc = 0u64;
        for (i, a) in g.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in h.0.iter().enumerate() {
                acc = (acc + *a as u64 * *b as u64 * self.table[i][j] as u64) % n;
            }
        }
        acc as u32
    }

    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Result<CycloNumber> {
        self.group.check(g)?;
        self.group.check(h)?;
        Ok(CycloNumber::root(self.order, self.exponent(g, h) as i64))
    }

    /// β(g,h) ∈ {±1}.
    pub fn is_real_at(&self, g: &GroupElement, h: &GroupElement) -> bool {
        (2 * self.exponent(g, h)).is_multiple_of(self.order)
    }

    pub fn is_real_valued(&self) -> bool {
        self.table
            .iter()
            .flatten()
            .all(|t| (2 * t) % self.order == 0)
    }

    /// H' = {h : β(h, g) = 1 for all g}.
    pub fn radical(&self) -> Vec<GroupElement> {
        let r = self.group.rank();
        self.group
            .elements()
            .filter(|h| (0..r).all(|j| self.exponent(h, &self.group.generator(j)) == 0))
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().len() == 1
    }

    /// β_A ⊗ β_B on the direct product.
    pub fn tensor(&self, other: &Self) -> Self {
        let group = self.group.direct_product(&other.group);
        let order = lcm(self.order, other.order);
        let (sa, sb) = (order / self.order, order / other.order);
        let (ra, rb) = (self.group.rank(), other.group.rank());
        let mut table = vec![vec![0u32; ra + rb]; ra + rb];
        for i in 0..ra {
            for j in 0..ra {
                table[i][j] = self.table[i][j] * sa;
            }
        }
        for i in 0..rb {
            for j in 0..rb {
                table[ra + i][ra + j] = other.table[i][j] * sb;
            }
        }
        Bicharacter {
            group,
            order,
            table,
        }
    }

    /// Same bicharacter on a group with identical factor orders (renamed).
    pub fn with_group(&self, group: FiniteAbelianGroup) -> Result<Self> {
        if group.orders() != self.group.orders() {
            return Err(Error::domain("group factors differ"));
        }
        Ok(Bicharacter {
            group,
            ..self.clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein_minus_one() -> Bicharacter {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        Bicharacter::new(g, 2, vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn evaluation_and_bimultiplicativity() {
        let b = klein_minus_one();
        let g = b.group().clone();
        for x in g.elements() {
            assert!(b.eval(&g.identity(), &x).unwrap().is_one());
            for y in g.elements() {
                let xy = b.eval(&x, &y).unwrap();
                let yx = b.eval(&y, &x).unwrap();
                assert!(xy.mul(&yx).is_one());
                for z in g.elements() {
                    let lhs = b.eval(&x, &g.op(&y, &z)).unwrap();
                    let rhs = xy.mul(&b.eval(&x, &z).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
        assert_eq!(
            b.eval(&g.generator(0), &g.generator(1)).unwrap(),
            CycloNumber::from_int(2, -1)
        );
    }

    #[test]
    fn rejects_invalid_tables() {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert!(Bicharacter::new(g.clone(), 4, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(Bicharacter::new(g, 4, vec![vec![0, 1], vec![3, 0]]).is_err());
    }

    #[test]
    fn radicals() {
        assert_eq!(klein_minus_one().radical().len(), 1);
        let g = FiniteAbelianGroup::new(vec![3, 2]).unwrap();
        assert_eq!(Bicharacter::trivial(g).radical().len(), 6);
    }

    #[test]
    fn tensor_orders() {
        let g3 = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let b3 = Bicharacter::new(g3, 3, vec![vec![0, 1], vec![2, 0]]).unwrap();
        let t = b3.tensor(&klein_minus_one());
        assert_eq!(t.order(), 6);
        let grp = t.group().clone();
        let x = grp.generator(0);
        let y = grp.generator(1);
        assert_eq!(t.eval(&x, &y).unwrap(), CycloNumber::root(3, 1));
        let a = grp.generator(2);
        let bb = grp.generator(3);
        assert_eq!(t.eval(&a, &bb).unwrap(), CycloNumber::from_int(1, -1));
        // Radical of a tensor with a trivial factor is the trivial factor.
        let triv = Bicharacter::trivial(FiniteAbelianGroup::cyclic(2));
        assert_eq!(klein_minus_one().tensor(&triv).radical().len(), 2);
    }
}
