use super::Monomial;
use std::cmp::Ordering;

/// Term orders used by the Gröbner engine.
///
/// `Lex` gives variable 0 the highest priority. `BlockElim` compares the
/// variables below `boundary` by graded reverse lex first and breaks ties by
/// graded reverse lex on the remaining block, which makes it an elimination
/// order for the first block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
    BlockElim {
        boundary: usize,
    },
}

fn grevlex(a: &[i32], b: &[i32]) -> Ordering {
    let da: i32 = a.iter().sum();
    let db: i32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exps(), b.exps());
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::BlockElim { boundary } => {
                grevlex(&a[..boundary], &b[..boundary]).then_with(|| grevlex(&a[boundary..], &b[boundary..]))
            }
        }
    }

    /// Integer sort key whose lexicographic order agrees with `cmp`. The key
    /// is additive in the exponents, so `key(m * t) = key(m) + key(t)`.
    pub(crate) fn key(&self, m: &Monomial) -> Vec<i64> {
        fn grevlex_key(e: &[i32], out: &mut Vec<i64>) {
            out.push(e.iter().map(|&x| x as i64).sum());
            out.extend(e.iter().rev().map(|&x| -(x as i64)));
        }
        let e = m.exps();
        let mut out = Vec::with_capacity(e.len() + 2);
        match *self {
            MonomialOrder::GrevLex => grevlex_key(e, &mut out),
            MonomialOrder::Lex => out.extend(e.iter().map(|&x| x as i64)),
            MonomialOrder::BlockElim { boundary } => {
                grevlex_key(&e[..boundary], &mut out);
                grevlex_key(&e[boundary..], &mut out);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[i32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 1, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 3, 0])), Ordering::Less);
        // x1 x3 < x2^2 in grevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::BlockElim { boundary: 1 };
        // any monomial with x beats every pure u monomial
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn keys_agree_with_comparison() {
        let all = Monomial::all_up_to_degree(3, 3);
        for o in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::BlockElim { boundary: 2 }] {
            for a in &all {
                for b in &all {
                    assert_eq!(o.cmp(a, b), o.key(a).cmp(&o.key(b)), "{o:?} {a:?} {b:?}");
                }
            }
        }
    }
}
