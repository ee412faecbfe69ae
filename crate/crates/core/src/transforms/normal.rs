use std::sync::Arc;

use super::{Builder, Transformed};
use crate::boolfun::{named, TruthTable};
use crate::error::{Error, Result};
use crate::syntax::{Axiom, Concept, ProblemInstance};

/// An `E`-concept with conjunctions flattened.
#[derive(Clone, Debug)]
enum Node {
    Atom(Arc<str>),
    Const(bool),
    And(Vec<Node>),
    Quant { exists: bool, role: Arc<str>, child: Box<Node> },
}

/// `Some(vars)` when `t` is the conjunction of the listed arguments (empty for `⊤`).
fn conjunct_vars(t: &TruthTable) -> Option<Vec<usize>> {
    let n = t.arity();
    let ones: Vec<usize> = (0..t.rows()).filter(|&i| t.get(i)).collect();
    let mask = ones.iter().fold(t.rows() - 1, |m, &i| m & i);
    let free = n - mask.count_ones() as usize;
    if ones.len() != 1 << free || ones.iter().any(|&i| i & mask != mask) {
        return None;
    }
    Some((0..n).filter(|&j| mask >> (n - 1 - j) & 1 == 1).collect())
}

fn convert(c: &Concept) -> Result<Node> {
    Ok(match c {
        Concept::Atomic(a) => Node::Atom(a.clone()),
        Concept::Apply(op, cs) => {
            if let Some(v) = op.table.constant_value() {
                return Ok(Node::Const(v));
            }
            let vars = conjunct_vars(&op.table).ok_or_else(|| {
                Error::Fragment(format!(
                    "operator `{}` is not a conjunction or constant",
                    op.name
                ))
            })?;
            Node::And(vars.iter().map(|&j| convert(&cs[j])).collect::<Result<_>>()?)
        }
        Concept::Exists(r, c) => Node::Quant {
            exists: true,
            role: r.clone(),
            child: Box::new(convert(c)?),
        },
        Concept::Forall(r, c) => Node::Quant {
            exists: false,
            role: r.clone(),
            child: Box::new(convert(c)?),
        },
    })
}

/// Conjuncts of `n` without `⊤`; `None` when one of them is `⊥`.
fn conjuncts(n: Node) -> Option<Vec<Node>> {
    let mut out = Vec::new();
    let mut stack = vec![n];
    while let Some(n) = stack.pop() {
        match n {
            Node::And(cs) => stack.extend(cs.into_iter().rev()),
            Node::Const(true) => {}
            Node::Const(false) => return None,
            other => out.push(other),
        }
    }
    Some(out)
}

fn is_simple_node(n: &Node) -> bool {
    matches!(n, Node::Atom(_) | Node::Const(_))
}

fn is_simple(c: &Concept) -> bool {
    match c {
        Concept::Atomic(_) => true,
        Concept::Apply(op, cs) => cs.is_empty() && op.table.constant_value().is_some(),
        _ => false,
    }
}

fn is_quantified_simple(c: &Concept) -> bool {
    match c {
        Concept::Exists(_, x) | Concept::Forall(_, x) => is_simple(x),
        _ => false,
    }
}

fn is_binary_conjunction(c: &Concept) -> bool {
    match c {
        Concept::Apply(op, cs) => op.table == named::and() && cs.iter().all(is_simple),
        _ => false,
    }
}

fn is_normal_axiom(ax: &Axiom) -> bool {
    let (l, r) = (&ax.lhs, &ax.rhs);
    (is_simple(r) && (is_simple(l) || is_binary_conjunction(l) || is_quantified_simple(l)))
        || (is_simple(l) && is_quantified_simple(r))
}

/// True iff every axiom has one of the shapes `A ⊑ B`, `A ⊓ B ⊑ C`, `QR.A ⊑ B`, `A ⊑ QR.B`
/// where `A, B, C` are atoms or constants.
pub fn is_normal_form(tbox: &[Axiom]) -> bool {
    tbox.iter().all(is_normal_axiom)
}

struct Normalizer<'a> {
    b: &'a mut Builder,
    out: Vec<Axiom>,
}

impl Normalizer<'_> {
    fn fresh(&mut self) -> Node {
        Node::Atom(self.b.numbered("_X"))
    }

    fn concept(&mut self, n: &Node) -> Concept {
        match n {
            Node::Atom(a) => Concept::Atomic(a.clone()),
            Node::Const(true) => self.b.top(),
            Node::Const(false) => self.b.bot(),
            Node::And(_) | Node::Quant { .. } => unreachable!("not a simple node"),
        }
    }

    fn emit(&mut self, lhs: Concept, rhs: Concept) {
        self.out.push(Axiom::new(lhs, rhs));
    }

    fn quant(&mut self, exists: bool, role: &Arc<str>, child: &Node) -> Concept {
        let c = self.concept(child);
        if exists {
            Concept::exists(role.clone(), c)
        } else {
            Concept::forall(role.clone(), c)
        }
    }

    /// A simple node `Y` with `Y ≡ n`.
    fn upper(&mut self, n: Node) -> Node {
        if is_simple_node(&n) {
            return n;
        }
        match conjuncts(n) {
            None => Node::Const(false),
            Some(items) => {
                let y = self.fresh();
                for item in items.clone() {
                    self.rhs(&y, item);
                }
                self.lhs(items, &y);
                y
            }
        }
    }

    /// Axioms stating `⊓ items ⊑ rhs`.
    fn lhs(&mut self, items: Vec<Node>, rhs: &Node) {
        if let [Node::Quant { exists, role, child }] = &items[..] {
            let inner = self.upper((**child).clone());
            let l = self.quant(*exists, role, &inner);
            let r = self.concept(rhs);
            self.emit(l, r);
            return;
        }
        let mut simples = Vec::with_capacity(items.len());
        for item in items {
            if is_simple_node(&item) {
                simples.push(item);
            } else {
                let y = self.fresh();
                self.lhs(vec![item], &y);
                simples.push(y);
            }
        }
        let mut rest = simples.into_iter();
        let Some(first) = rest.next() else {
            let (l, r) = (self.concept(&Node::Const(true)), self.concept(rhs));
            self.emit(l, r);
            return;
        };
        let mut acc = first;
        let mut next = rest.next();
        if next.is_none() {
            let (l, r) = (self.concept(&acc), self.concept(rhs));
            self.emit(l, r);
            return;
        }
        while let Some(s) = next {
            next = rest.next();
            let target = if next.is_none() { rhs.clone() } else { self.fresh() };
            let (a, c) = (self.concept(&acc), self.concept(&s));
            let l = self.b.and(a, c);
            let r = self.concept(&target);
            self.emit(l, r);
            acc = target;
        }
    }

    /// Axioms stating `lhs ⊑ item` for a single conjunct.
    fn rhs(&mut self, lhs: &Node, item: Node) {
        match item {
            Node::Quant { exists, role, child } => {
                let inner = if is_simple_node(&child) {
                    *child
                } else {
                    let y = self.fresh();
                    self.rhs_all(&y, *child);
                    y
                };
                let l = self.concept(lhs);
                let r = self.quant(exists, &role, &inner);
                self.emit(l, r);
            }
            simple => {
                let (l, r) = (self.concept(lhs), self.concept(&simple));
                self.emit(l, r);
            }
        }
    }

    fn rhs_all(&mut self, lhs: &Node, n: Node) {
        match conjuncts(n) {
            None => self.rhs(lhs, Node::Const(false)),
            Some(items) => {
                for item in items {
                    self.rhs(lhs, item);
                }
            }
        }
    }

    fn axiom(&mut self, ax: &Axiom) -> Result<()> {
        if is_normal_axiom(ax) {
            self.out.push(ax.clone());
            return Ok(());
        }
        let Some(lhs) = conjuncts(convert(&ax.lhs)?) else {
            return Ok(());
        };
        let rhs = match conjuncts(convert(&ax.rhs)?) {
            None => vec![Node::Const(false)],
            Some(items) => items,
        };
        match &rhs[..] {
            [] => {}
            [r] if is_simple_node(r) => self.lhs(lhs, r),
            _ => {
                let a = match &lhs[..] {
                    [] => Node::Const(true),
                    [x] if is_simple_node(x) => x.clone(),
                    _ => {
                        let x = self.fresh();
                        self.lhs(lhs, &x);
                        x
                    }
                };
                for r in rhs {
                    self.rhs(&a, r);
                }
            }
        }
        Ok(())
    }
}

/// Brings a TBox over conjunction and constants into the shapes of [`is_normal_form`].
///
/// Compound subconcepts are named by fresh atoms `_X1, _X2, …`: quantifier fillers by full
/// definitions, the rest in the polarity they occur in.
/// Axioms that are already normal are kept verbatim.
pub fn normalize_nf(instance: &ProblemInstance) -> Result<Transformed> {
    let mut b = Builder::new(instance, instance.operators.clone());
    let mut n = Normalizer {
        b: &mut b,
        out: Vec::new(),
    };
    for ax in instance.tbox() {
        n.axiom(ax)?;
    }
    let tbox = n.out;
    let mut out = instance.clone();
    out.ontology.tbox = tbox;
    Ok(b.finish(instance, out))
}

/// Replaces each `A ⊓ B ⊑ C` by `A ⊑ ∃R.⊤`, `B ⊑ ∀R.P`, `∃R.P ⊑ C` with fresh `R` and `P`.
pub fn eliminate_conjunction_nf7(instance: &ProblemInstance) -> Result<Transformed> {
    if !is_normal_form(instance.tbox()) {
        return Err(Error::Fragment("input TBox is not in normal form".into()));
    }
    let mut b = Builder::new(instance, instance.operators.clone());
    let mut tbox = Vec::new();
    for ax in instance.tbox() {
        match &ax.lhs {
            Concept::Apply(op, cs) if cs.len() == 2 && op.table == named::and() => {
                let role = b.numbered("_R");
                let p = Concept::Atomic(b.numbered("_P"));
                let top = b.top();
                tbox.push(Axiom::new(cs[0].clone(), Concept::exists(role.clone(), top)));
                tbox.push(Axiom::new(cs[1].clone(), Concept::forall(role.clone(), p.clone())));
                tbox.push(Axiom::new(Concept::exists(role, p), ax.rhs.clone()));
            }
            _ => tbox.push(ax.clone()),
        }
    }
    let mut out = instance.clone();
    out.ontology.tbox = tbox;
    Ok(b.finish(instance, out))
}
