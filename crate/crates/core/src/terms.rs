//! Terms over two actors and one acted object, for checking mixed
//! identities across a pair of actions.
//!
//! A term is built from sorted variables, the three algebras' own
//! operations, and applications of either action's tables. Every action
//! application produces an acted-sort value.

use crate::actions::ActionDatum;
use crate::error::StructureError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermSort {
    Acted,
    ActorA,
    ActorC,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActorSide {
    A,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var { sort: TermSort, index: usize },
    Add { sort: TermSort, lhs: Box<Term>, rhs: Box<Term> },
    Neg { sort: TermSort, arg: Box<Term> },
    Op { sort: TermSort, name: String, lhs: Box<Term>, rhs: Box<Term> },
    Dot { side: ActorSide, actor: Box<Term>, acted: Box<Term> },
    StarLeft { side: ActorSide, name: String, actor: Box<Term>, acted: Box<Term> },
    StarRight { side: ActorSide, name: String, acted: Box<Term>, actor: Box<Term> },
}

impl Term {
    pub fn var(sort: TermSort, index: usize) -> Term {
        Term::Var { sort, index }
    }

    fn actor_sort(side: ActorSide) -> TermSort {
        match side {
            ActorSide::A => TermSort::ActorA,
            ActorSide::C => TermSort::ActorC,
        }
    }

    /// The sort this term produces, or an error if an argument has the
    /// wrong sort.
    pub fn sort(&self) -> Result<TermSort, StructureError> {
        match self {
            Term::Var { sort, .. } => Ok(*sort),
            Term::Add { sort, lhs, rhs } => {
                for side in [lhs, rhs] {
                    if side.sort()? != *sort {
                        return Err(StructureError::IllSorted("add argument".into()));
                    }
                }
                Ok(*sort)
            }
            Term::Neg { sort, arg } => {
                if arg.sort()? != *sort {
                    return Err(StructureError::IllSorted("neg argument".into()));
                }
                Ok(*sort)
            }
            Term::Op { sort, lhs, rhs, .. } => {
                for side in [lhs, rhs] {
                    if side.sort()? != *sort {
                        return Err(StructureError::IllSorted("operation argument".into()));
                    }
                }
                Ok(*sort)
            }
            Term::Dot { side, actor, acted }
            | Term::StarLeft { side, actor, acted, .. }
            | Term::StarRight { side, actor, acted, .. } => {
                if actor.sort()? != Term::actor_sort(*side) {
                    return Err(StructureError::IllSorted("actor argument".into()));
                }
                if acted.sort()? != TermSort::Acted {
                    return Err(StructureError::IllSorted("acted argument".into()));
                }
                Ok(TermSort::Acted)
            }
        }
    }

    fn max_var(&self, sort: TermSort) -> Option<usize> {
        match self {
            Term::Var { sort: s, index } => (*s == sort).then_some(*index),
            Term::Add { lhs, rhs, .. } | Term::Op { lhs, rhs, .. } => {
                lhs.max_var(sort).into_iter().chain(rhs.max_var(sort)).max()
            }
            Term::Neg { arg, .. } => arg.max_var(sort),
            Term::Dot { actor, acted, .. }
            | Term::StarLeft { actor, acted, .. }
            | Term::StarRight { actor, acted, .. } => {
                actor.max_var(sort).into_iter().chain(acted.max_var(sort)).max()
            }
        }
    }
}

/// One identity `lhs = rhs` between acted-sort terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossIdentity {
    pub display: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl CrossIdentity {
    pub fn new(display: &str, lhs: Term, rhs: Term) -> Self {
        CrossIdentity { display: display.to_string(), lhs, rhs }
    }
}

/// A violated identity: the variable assignment and the two side values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityViolation {
    pub identity: usize,
    pub acted_vars: Vec<usize>,
    pub actor_a_vars: Vec<usize>,
    pub actor_c_vars: Vec<usize>,
    pub lhs_value: usize,
    pub rhs_value: usize,
}

pub(crate) struct Evaluator<'a> {
    pub xi_a: &'a ActionDatum,
    pub xi_c: &'a ActionDatum,
}

impl<'a> Evaluator<'a> {
    fn op_index(&self, sort: TermSort, name: &str) -> Result<usize, StructureError> {
        let sig = match sort {
            TermSort::Acted => &self.xi_a.acted().signature,
            TermSort::ActorA => &self.xi_a.actor().signature,
            TermSort::ActorC => &self.xi_c.actor().signature,
        };
        sig.op_index(name)
            .ok_or_else(|| StructureError::IllSorted(format!("unknown operation {name}")))
    }

    pub fn check(&self, term: &Term) -> Result<(), StructureError> {
        term.sort()?;
        match term {
            Term::Var { sort, index } => {
                let size = match sort {
                    TermSort::Acted => self.xi_a.acted().size,
                    TermSort::ActorA => self.xi_a.actor().size,
                    TermSort::ActorC => self.xi_c.actor().size,
                };
                // variables are only bounded by use; any index is fine,
                // the assignment loop gives it the full carrier
                let _ = (index, size);
                Ok(())
            }
            Term::Add { lhs, rhs, .. } => self.check(lhs).and_then(|_| self.check(rhs)),
            Term::Neg { arg, .. } => self.check(arg),
            Term::Op { sort, name, lhs, rhs } => {
                self.op_index(*sort, name)?;
                self.check(lhs)?;
                self.check(rhs)
            }
            Term::Dot { actor, acted, .. } => self.check(actor).and_then(|_| self.check(acted)),
            Term::StarLeft { side, name, actor, acted }
            | Term::StarRight { side, name, actor, acted } => {
                self.op_index(Term::actor_sort(*side), name)?;
                self.check(actor)?;
                self.check(acted)
            }
        }
    }

    pub fn eval(
        &self,
        term: &Term,
        acted: &[usize],
        actor_a: &[usize],
        actor_c: &[usize],
    ) -> usize {
        match term {
            Term::Var { sort, index } => match sort {
                TermSort::Acted => acted[*index],
                TermSort::ActorA => actor_a[*index],
                TermSort::ActorC => actor_c[*index],
            },
            Term::Add { sort, lhs, rhs } => {
                let l = self.eval(lhs, acted, actor_a, actor_c);
                let r = self.eval(rhs, acted, actor_a, actor_c);
                self.algebra(*sort).sum(l, r)
            }
            Term::Neg { sort, arg } => {
                let v = self.eval(arg, acted, actor_a, actor_c);
                self.algebra(*sort).negate(v)
            }
            Term::Op { sort, name, lhs, rhs } => {
                let k = self.op_index(*sort, name).expect("checked");
                let l = self.eval(lhs, acted, actor_a, actor_c);
                let r = self.eval(rhs, acted, actor_a, actor_c);
                self.algebra(*sort).op(k, l, r)
            }
            Term::Dot { side, actor, acted: x } => {
                let b = self.eval(actor, acted, actor_a, actor_c);
                let v = self.eval(x, acted, actor_a, actor_c);
                self.action(*side).dot[b][v]
            }
            Term::StarLeft { side, name, actor, acted: x } => {
                let k = self.op_index(Term::actor_sort(*side), name).expect("checked");
                let b = self.eval(actor, acted, actor_a, actor_c);
                let v = self.eval(x, acted, actor_a, actor_c);
                self.action(*side).star_left[k][b][v]
            }
            Term::StarRight { side, name, actor, acted: x } => {
                let k = self.op_index(Term::actor_sort(*side), name).expect("checked");
                let b = self.eval(actor, acted, actor_a, actor_c);
                let v = self.eval(x, acted, actor_a, actor_c);
                self.action(*side).star_right[k][v][b]
            }
        }
    }

    fn algebra(&self, sort: TermSort) -> &crate::algebra::FiniteAlgebra {
        match sort {
            TermSort::Acted => self.xi_a.acted(),
            TermSort::ActorA => self.xi_a.actor(),
            TermSort::ActorC => self.xi_c.actor(),
        }
    }

    fn action(&self, side: ActorSide) -> &ActionDatum {
        match side {
            ActorSide::A => self.xi_a,
            ActorSide::C => self.xi_c,
        }
    }
}

pub(crate) fn var_counts(id: &CrossIdentity) -> (usize, usize, usize) {
    let count = |sort| {
        id.lhs
            .max_var(sort)
            .into_iter()
            .chain(id.rhs.max_var(sort))
            .max()
            .map_or(0, |m| m + 1)
    };
    (count(TermSort::Acted), count(TermSort::ActorA), count(TermSort::ActorC))
}
