use super::monomial::Monomial;
use super::var::{Var, NVARS};
use std::cmp::Ordering;

/// Shape of a term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    DegRevLex,
    /// Degrevlex on the first `k` priority slots, ties broken by degrevlex on the rest.
    Block(u8),
}

/// A monomial order: a kind plus a variable priority (highest first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: [u8; NVARS],
}

const IDENTITY: [u8; NVARS] = {
    let mut p = [0u8; NVARS];
    let mut k = 0;
    while k < NVARS {
        p[k] = k as u8;
        k += 1;
    }
    p
};

impl Default for TermOrder {
    fn default() -> Self {
        Self::degrevlex()
    }
}

impl TermOrder {
    /// Degrevlex with priority O1 > O2 > … > O345 > u > y.
    pub fn degrevlex() -> Self {
        Self {
            kind: OrderKind::DegRevLex,
            priority: IDENTITY,
        }
    }

    pub fn lex() -> Self {
        Self {
            kind: OrderKind::Lex,
            priority: IDENTITY,
        }
    }

    /// Builds an order from a priority list; unlisted slots follow in index order.
    pub fn with_priority(kind: OrderKind, first: &[Var]) -> Self {
        let mut priority = [0u8; NVARS];
        let mut used = [false; NVARS];
        let mut n = 0;
        for v in first {
            if !used[v.index()] {
                used[v.index()] = true;
                priority[n] = v.index() as u8;
                n += 1;
            }
        }
        for (k, &taken) in used.iter().enumerate() {
            if !taken {
                priority[n] = k as u8;
                n += 1;
            }
        }
        Self { kind, priority }
    }

    /// Elimination order: the `elim` variables form a block greater than everything else.
    pub fn elimination(elim: &[Var]) -> Self {
        let mut t = Self::with_priority(OrderKind::DegRevLex, elim);
        t.kind = OrderKind::Block(elim.len() as u8);
        t
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> impl Iterator<Item = Var> + '_ {
        self.priority.iter().map(|&k| Var::from_index(k as usize).unwrap())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => lex(&self.priority, a, b),
            OrderKind::DegRevLex => degrevlex(&self.priority, a, b),
            OrderKind::Block(k) => {
                let (hi, lo) = self.priority.split_at(k as usize);
                degrevlex(hi, a, b).then_with(|| degrevlex(lo, a, b))
            }
        }
    }
}

fn lex(slots: &[u8], a: &Monomial, b: &Monomial) -> Ordering {
    let (ea, eb) = (a.exps(), b.exps());
    for &s in slots {
        match ea[s as usize].cmp(&eb[s as usize]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn degrevlex(slots: &[u8], a: &Monomial, b: &Monomial) -> Ordering {
    let (ea, eb) = (a.exps(), b.exps());
    let da: u32 = slots.iter().map(|&s| ea[s as usize] as u32).sum();
    let db: u32 = slots.iter().map(|&s| eb[s as usize] as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for &s in slots.iter().rev() {
        match ea[s as usize].cmp(&eb[s as usize]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(k: usize) -> Monomial {
        Monomial::var(Var::gen(k))
    }

    #[test]
    fn lex_prefers_first_variable() {
        let sq = o(0).mul(&o(0));
        assert_eq!(TermOrder::lex().cmp(&sq, &o(0).mul(&o(1))), Ordering::Greater);
        assert_eq!(TermOrder::lex().cmp(&o(0), &o(1).mul(&o(1))), Ordering::Greater);
    }

    #[test]
    fn degrevlex_examples() {
        let ord = TermOrder::degrevlex();
        let sq = o(0).mul(&o(0));
        assert_eq!(ord.cmp(&sq, &o(0).mul(&o(1))), Ordering::Greater);
        assert_eq!(ord.cmp(&o(0).mul(&o(2)), &o(1).mul(&o(1))), Ordering::Less);
        assert_eq!(ord.cmp(&Monomial::one(), &o(0)), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates() {
        let ord = TermOrder::elimination(&[Var::gen(0)]);
        assert_eq!(ord.cmp(&o(0), &o(1).mul(&o(1)).mul(&o(2))), Ordering::Greater);
        assert_eq!(ord.cmp(&o(1), &o(2)), Ordering::Greater);
    }
}
