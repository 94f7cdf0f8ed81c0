//! The branch-and-bound driver.
//!
//! The root box is first expanded breadth-first into a fixed number of
//! subtrees, which are then searched depth-first, in parallel when enabled.
//! The frontier size does not depend on the worker count, and results are
//! merged in path order, so certificates are identical in every mode.

use crate::certificate::{Certificate, LeafRecord, SCHEMA};
use crate::domain::{DomainBox, Path, Step};
use crate::goal::{Goal, Margin, PointValue, SqrtDiffExpr};
use crate::replay::{prepare, replay_leaf, PreparedCondition};
use crate::CertifyError;
use cartan_exact::bernstein::Patch;
use cartan_exact::exec::{self, Mode};
use cartan_exact::rational::fmt_rational;
use cartan_exact::{RatPoly, Rational};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub depth_limit: usize,
    pub leaf_budget: usize,
    pub mode: Mode,
    /// Number of subtrees handed to the depth-first phase.
    pub frontier: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { depth_limit: 24, leaf_budget: 10_000_000, mode: Mode::default_mode(), frontier: 64 }
    }
}

impl CertifyOptions {
    pub fn with_depth(depth_limit: usize) -> Self {
        CertifyOptions { depth_limit, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub point: Vec<Rational>,
    pub value: PointValue,
    pub margin: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DepthReport {
    pub worst_box: DomainBox,
    pub path: Path,
    /// Best lower bound of `goal − margin` found on the worst box, over the
    /// margin alternatives.
    pub best_bound: Rational,
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug)]
pub enum CertOutcome {
    Certified(Certificate),
    CounterexampleCandidate(Counterexample),
    DepthExceeded(DepthReport),
}

impl CertOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, CertOutcome::Certified(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CertOutcome::Certified(_) => "certified",
            CertOutcome::CounterexampleCandidate(_) => "counterexample candidate",
            CertOutcome::DepthExceeded(_) => "depth exceeded",
        }
    }
}

struct CondPatch {
    h: Patch,
    guard: Option<Patch>,
}

impl CondPatch {
    fn waived(&self) -> bool {
        self.guard.as_ref().is_some_and(|g| g.all_nonpositive())
    }

    fn holds(&self) -> bool {
        self.waived() || self.h.all_positive()
    }

    fn split(&self, dim: usize) -> (CondPatch, CondPatch) {
        let (a, b) = self.h.split(dim);
        let (ga, gb) = match &self.guard {
            Some(g) => {
                let (x, y) = g.split(dim);
                (Some(x), Some(y))
            }
            None => (None, None),
        };
        (CondPatch { h: a, guard: ga }, CondPatch { h: b, guard: gb })
    }
}

struct Node {
    path: Path,
    bx: DomainBox,
    alts: Vec<Vec<CondPatch>>,
}

enum Visit {
    Proven(LeafRecord),
    Refuted(Counterexample),
    Exceeded(DepthReport),
    Split(Node, Node),
}

struct Engine<'a> {
    goal: &'a Goal,
    root: &'a DomainBox,
    prepared: Vec<Vec<PreparedCondition>>,
    opts: &'a CertifyOptions,
}

fn alt_lower(alt: &[CondPatch]) -> Rational {
    alt.iter()
        .filter(|c| !c.waived())
        .map(|c| c.h.lower())
        .min()
        .unwrap_or_else(Rational::zero)
}

impl Engine<'_> {
    fn vars(&self) -> &[String] {
        self.root.vars()
    }

    fn find_failure(&self, bx: &DomainBox) -> Result<Option<Counterexample>, CertifyError> {
        let n = bx.dims();
        let mut points: Vec<Vec<Rational>> = (0..1usize << n).map(|m| bx.corner(m)).collect();
        points.push(bx.center());
        for point in points {
            if let Some((value, margin)) = self.goal.failure_at(self.vars(), &point)? {
                return Ok(Some(Counterexample { point, value, margin }));
            }
        }
        Ok(None)
    }

    fn visit(&self, node: Node) -> Result<Visit, CertifyError> {
        if let Some(cx) = self.find_failure(&node.bx)? {
            return Ok(Visit::Refuted(cx));
        }
        let mut bernstein_ok = false;
        for (ai, alt) in node.alts.iter().enumerate() {
            if alt.iter().all(|c| c.holds()) {
                bernstein_ok = true;
                let replay = replay_leaf(&self.prepared[ai], &node.bx)?;
                if replay.is_positive() {
                    return Ok(Visit::Proven(LeafRecord {
                        path: node.path.to_string(),
                        bounds: node.bx.endpoints(),
                        alternative: ai,
                        bernstein_lower: fmt_rational(&alt_lower(alt)),
                        replay_lower: fmt_rational(&replay),
                    }));
                }
            }
        }
        let (best_ai, best) = node
            .alts
            .iter()
            .enumerate()
            .map(|(i, a)| (i, alt_lower(a)))
            .fold(None::<(usize, Rational)>, |acc, (i, v)| match acc {
                Some((_, ref b)) if *b >= v => acc,
                _ => Some((i, v)),
            })
            .expect("at least one alternative");
        if node.path.depth() >= self.opts.depth_limit {
            return Ok(Visit::Exceeded(DepthReport { worst_box: node.bx, path: node.path, best_bound: best, budget_exhausted: false }));
        }
        let dim = if bernstein_ok { widest_dim(&node.bx, self.root) } else { choose_dim(&node.alts[best_ai], &node.bx) };
        let (lb, ub) = node.bx.split(dim);
        let mut la = Vec::new();
        let mut ua = Vec::new();
        for alt in &node.alts {
            let (l, u): (Vec<CondPatch>, Vec<CondPatch>) = alt.iter().map(|c| c.split(dim)).unzip();
            la.push(l);
            ua.push(u);
        }
        Ok(Visit::Split(
            Node { path: node.path.push(Step { dim, upper: false }), bx: lb, alts: la },
            Node { path: node.path.push(Step { dim, upper: true }), bx: ub, alts: ua },
        ))
    }
}

/// Largest Bernstein coefficient jump on the first condition still open;
/// ties go to the lower index.
fn choose_dim(alt: &[CondPatch], bx: &DomainBox) -> usize {
    let open = alt.iter().find(|c| !c.holds()).or_else(|| alt.iter().find(|c| !c.waived())).unwrap_or(&alt[0]);
    let p = &open.h;
    let mut best = 0;
    let mut best_v = Rational::zero();
    for d in 0..p.dims() {
        let v = Rational::new(p.variation(d), p.den().clone());
        if v > best_v {
            best = d;
            best_v = v;
        }
    }
    if best_v.is_zero() {
        // flat patch: split the widest side
        let w: Vec<Rational> = bx.intervals().iter().map(|i| i.width()).collect();
        best = (0..w.len()).fold(0, |b, i| if w[i] > w[b] { i } else { b });
    }
    best
}

/// Used when Bernstein already clears the box but the interval replay does
/// not: the side longest relative to the root box.
fn widest_dim(bx: &DomainBox, root: &DomainBox) -> usize {
    let rel: Vec<Rational> = bx
        .intervals()
        .iter()
        .zip(root.intervals())
        .map(|(a, b)| if b.width().is_zero() { Rational::zero() } else { a.width() / b.width() })
        .collect();
    (0..rel.len()).fold(0, |b, i| if rel[i] > rel[b] { i } else { b })
}

#[derive(Default)]
struct Partial {
    leaves: Vec<LeafRecord>,
    refuted: Option<(Path, Counterexample)>,
    exceeded: Option<DepthReport>,
    nodes: usize,
    max_depth: usize,
}

impl Partial {
    fn absorb(&mut self, other: Partial) {
        self.leaves.extend(other.leaves);
        if self.refuted.is_none() {
            self.refuted = other.refuted;
        }
        if self.exceeded.is_none() {
            self.exceeded = other.exceeded;
        }
        self.nodes += other.nodes;
        self.max_depth = self.max_depth.max(other.max_depth);
    }

    fn record(&mut self, path: &Path, v: Visit, out: &mut Vec<Node>) {
        self.nodes += 1;
        match v {
            Visit::Proven(l) => {
                self.max_depth = self.max_depth.max(path.depth());
                self.leaves.push(l);
            }
            Visit::Refuted(cx) => {
                if self.refuted.is_none() {
                    self.refuted = Some((path.clone(), cx));
                }
            }
            Visit::Exceeded(r) => {
                if self.exceeded.is_none() {
                    self.exceeded = Some(r);
                }
            }
            Visit::Split(a, b) => {
                out.push(a);
                out.push(b);
            }
        }
    }
}

fn dfs(engine: &Engine, start: Node, budget: usize) -> Result<Partial, CertifyError> {
    let mut part = Partial::default();
    let mut stack = vec![start];
    while let Some(node) = stack.pop() {
        if part.leaves.len() >= budget {
            part.exceeded.get_or_insert(DepthReport {
                worst_box: node.bx.clone(),
                path: node.path.clone(),
                best_bound: Rational::zero(),
                budget_exhausted: true,
            });
            break;
        }
        let path = node.path.clone();
        let mut children = Vec::new();
        part.record(&path, engine.visit(node)?, &mut children);
        if part.refuted.is_some() {
            break;
        }
        // lower child on top
        stack.extend(children.into_iter().rev());
    }
    Ok(part)
}

fn root_node(goal: &Goal, bx: &DomainBox) -> Result<Node, CertifyError> {
    let mut alts = Vec::new();
    for conds in goal.conditions(bx.vars())? {
        let mut v = Vec::new();
        for c in conds {
            v.push(CondPatch {
                h: Patch::from_poly(&c.h, bx.intervals())?,
                guard: c.guard.as_ref().map(|g| Patch::from_poly(g, bx.intervals())).transpose()?,
            });
        }
        alts.push(v);
    }
    Ok(Node { path: Path::default(), bx: bx.clone(), alts })
}

/// Certifies `goal` on `bx`; for `s − t√d` goals the radicand is certified
/// positive first.
pub fn certify(goal: &Goal, bx: &DomainBox, opts: &CertifyOptions) -> Result<CertOutcome, CertifyError> {
    let Goal::SqrtDiff { expr, .. } = goal else {
        return certify_core(goal, bx, opts);
    };
    let radicand = match certify_core(&Goal::positive(expr.d.clone(), Margin::zero()), bx, opts)? {
        CertOutcome::Certified(c) => c,
        CertOutcome::CounterexampleCandidate(cx) if cx.value.s.is_negative() => {
            let point: Vec<String> = cx.point.iter().map(fmt_rational).collect();
            return Err(CertifyError::RadicandNegative { point: point.join(", "), bx: bx.to_string() });
        }
        CertOutcome::CounterexampleCandidate(cx) => {
            let point: Vec<String> = cx.point.iter().map(fmt_rational).collect();
            return Err(CertifyError::RadicandUncertified(format!("radicand vanishes at ({})", point.join(", "))));
        }
        CertOutcome::DepthExceeded(r) => {
            return Err(CertifyError::RadicandUncertified(format!("depth limit reached near {}", r.worst_box)));
        }
    };
    Ok(match certify_core(goal, bx, opts)? {
        CertOutcome::Certified(mut c) => {
            c.radicand = Some(Box::new(radicand));
            CertOutcome::Certified(c)
        }
        other => other,
    })
}

fn certify_core(goal: &Goal, bx: &DomainBox, opts: &CertifyOptions) -> Result<CertOutcome, CertifyError> {
    let engine = Engine { goal, root: bx, prepared: prepare(&goal.conditions(bx.vars())?)?, opts };
    let mut total = Partial::default();
    let mut frontier = vec![root_node(goal, bx)?];
    // breadth-first until the frontier is wide enough
    while !frontier.is_empty() && frontier.len() < opts.frontier.max(1) {
        let paths: Vec<Path> = frontier.iter().map(|n| n.path.clone()).collect();
        let cells: Vec<std::sync::Mutex<Option<Node>>> = frontier.into_iter().map(|n| std::sync::Mutex::new(Some(n))).collect();
        let visits = exec::map(opts.mode, &cells, |c| engine.visit(c.lock().unwrap().take().unwrap()));
        let mut next = Vec::new();
        for (path, v) in paths.iter().zip(visits) {
            total.record(path, v?, &mut next);
        }
        frontier = next;
        if total.refuted.is_some() {
            frontier.clear();
        }
    }
    if !frontier.is_empty() {
        let budget = (opts.leaf_budget / frontier.len()).max(1);
        let cells: Vec<std::sync::Mutex<Option<Node>>> = frontier.into_iter().map(|n| std::sync::Mutex::new(Some(n))).collect();
        let parts = exec::map(opts.mode, &cells, |c| dfs(&engine, c.lock().unwrap().take().unwrap(), budget));
        for p in parts {
            total.absorb(p?);
        }
    }
    if let Some((_, cx)) = total.refuted {
        return Ok(CertOutcome::CounterexampleCandidate(cx));
    }
    if let Some(r) = total.exceeded {
        return Ok(CertOutcome::DepthExceeded(r));
    }
    let mut leaves = total.leaves;
    leaves.sort_by_cached_key(|l| Path::parse(&l.path).expect("own path"));
    Ok(CertOutcome::Certified(Certificate {
        schema: SCHEMA,
        kind: goal.kind().to_string(),
        fingerprint: goal.fingerprint(bx),
        vars: bx.vars().to_vec(),
        root: bx.endpoints(),
        margins: goal.margin().alternatives.iter().map(|m| m.to_string()).collect(),
        leaf_count: leaves.len(),
        leaves,
        max_depth: total.max_depth,
        nodes_visited: total.nodes,
        radicand: None,
    }))
}

/// `f > margin` on `bx`.
pub fn certify_positive(f: &RatPoly, bx: &DomainBox, margin: &Margin, opts: &CertifyOptions) -> Result<CertOutcome, CertifyError> {
    certify(&Goal::positive(f.clone(), margin.clone()), bx, opts)
}

/// `s − t√d > margin` on `bx`, after certifying `d > 0` there.
pub fn certify_sqrt_diff(
    expr: &SqrtDiffExpr,
    bx: &DomainBox,
    margin: &Margin,
    opts: &CertifyOptions,
) -> Result<CertOutcome, CertifyError> {
    certify(&Goal::sqrt_diff(expr.clone(), margin.clone()), bx, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::replay::verify_certificate;
    use cartan_exact::expr::parse_poly;
    use cartan_exact::rational::{int, rat};

    fn rp(s: &str) -> RatPoly {
        parse_poly(s).unwrap().to_rat().unwrap()
    }

    fn unit(v: &str, lo: i64, hi: i64) -> DomainBox {
        DomainBox::new(&[(v, int(lo), int(hi))]).unwrap()
    }

    #[test]
    fn square_plus_one() {
        let bx = unit("x", -1, 1);
        // x² + 1 > 1 is false at x = 0, so margin 1 cannot be certified
        let out = certify_positive(&rp("x^2 + 1"), &bx, &Margin::constant(int(1)), &CertifyOptions::default()).unwrap();
        match out {
            CertOutcome::CounterexampleCandidate(cx) => assert_eq!(cx.value.s, int(1)),
            o => panic!("{}", o.label()),
        }
        // the Bernstein form of x² on [−1, 1] has a negative middle
        // coefficient, so one bisection is needed
        let out = certify_positive(&rp("x^2 + 1"), &bx, &Margin::constant(rat(1, 2)), &CertifyOptions::default()).unwrap();
        let c = out.certificate().unwrap();
        assert_eq!(c.max_depth, 1);
        let out = certify_positive(&rp("x^2 + 1"), &unit("x", 0, 1), &Margin::constant(rat(1, 2)), &CertifyOptions::default()).unwrap();
        assert_eq!(out.certificate().unwrap().max_depth, 0);
    }

    #[test]
    fn boundary_zero_is_a_counterexample() {
        let out = certify_positive(&rp("x"), &unit("x", 0, 1), &Margin::zero(), &CertifyOptions::default()).unwrap();
        match out {
            CertOutcome::CounterexampleCandidate(cx) => {
                assert_eq!(cx.point, vec![int(0)]);
                assert_eq!(cx.value.s, int(0));
            }
            o => panic!("{}", o.label()),
        }
    }

    #[test]
    fn sqrt_diff_examples() {
        let bx = DomainBox::new(&[("x", int(0), int(1)), ("y", int(0), int(1))]).unwrap();
        let e = SqrtDiffExpr { s: rp("2"), t: rp("1"), d: rp("1") };
        let out = certify_sqrt_diff(&e, &bx, &Margin::zero(), &CertifyOptions::default()).unwrap();
        let goal = Goal::sqrt_diff(e, Margin::zero());
        assert!(verify_certificate(out.certificate().unwrap(), &goal).unwrap());

        let neg = SqrtDiffExpr { s: rp("1"), t: rp("2"), d: rp("1") };
        match certify_sqrt_diff(&neg, &bx, &Margin::zero(), &CertifyOptions::default()).unwrap() {
            CertOutcome::CounterexampleCandidate(cx) => assert_eq!(cx.value.to_f64(), -1.0),
            o => panic!("{}", o.label()),
        }
        let bad = SqrtDiffExpr { s: rp("1"), t: rp("1"), d: rp("x - 1/2") };
        assert!(matches!(
            certify_sqrt_diff(&bad, &bx, &Margin::zero(), &CertifyOptions::default()),
            Err(CertifyError::RadicandNegative { .. })
        ));
    }

    #[test]
    fn sqrt_diff_needs_subdivision() {
        // 1 + x + 1/100 − y·√(1 + x) > 0 on [0,1]²; tight near (0, 1)
        let bx = DomainBox::new(&[("x", int(0), int(1)), ("y", int(0), int(1))]).unwrap();
        let e = SqrtDiffExpr { s: rp("101/100 + x"), t: rp("y"), d: rp("1 + x") };
        let out = certify_sqrt_diff(&e, &bx, &Margin::zero(), &CertifyOptions::default()).unwrap();
        let c = out.certificate().expect("certified");
        assert!(c.leaf_count > 1);
        assert!(verify_certificate(c, &Goal::sqrt_diff(e, Margin::zero())).unwrap());
    }

    #[test]
    fn min_margin_uses_either_alternative() {
        // x + 1 > min{2x, 3/2} on [0, 2]
        let bx = unit("x", 0, 2);
        let m = Margin::min_of(vec![rp("2*x"), rp("3/2")]);
        let out = certify_positive(&rp("x + 1"), &bx, &m, &CertifyOptions::default()).unwrap();
        let c = out.certificate().expect("certified");
        let alts: std::collections::BTreeSet<usize> = c.leaves.iter().map(|l| l.alternative).collect();
        assert_eq!(alts.len(), 2);
        assert!(verify_certificate(c, &Goal::positive(rp("x + 1"), m)).unwrap());
    }

    #[test]
    fn depth_limit_reports_best_bound() {
        // positive but with a tiny minimum that needs depth
        let f = rp("(x - 1/3)^2 + 1/1000000");
        let out = certify_positive(&f, &unit("x", 0, 1), &Margin::zero(), &CertifyOptions::with_depth(2)).unwrap();
        assert!(matches!(out, CertOutcome::DepthExceeded(_)));
        let out = certify_positive(&f, &unit("x", 0, 1), &Margin::zero(), &CertifyOptions::with_depth(30)).unwrap();
        assert!(out.is_certified());
    }

    #[test]
    fn modes_produce_identical_certificates() {
        let f = rp("x^4 - x*y + y^2 + 1/5");
        let bx = DomainBox::new(&[("x", int(-1), int(1)), ("y", int(-1), int(1))]).unwrap();
        let mut o = CertifyOptions::default();
        o.mode = Mode::Sequential;
        let a = certify_positive(&f, &bx, &Margin::zero(), &o).unwrap();
        o.mode = Mode::Parallel;
        let b = certify_positive(&f, &bx, &Margin::zero(), &o).unwrap();
        assert_eq!(a.certificate().unwrap(), b.certificate().unwrap());
    }

    #[test]
    fn tampering_is_detected() {
        let f = rp("x^4 - x*y + y^2 + 1/5");
        let bx = DomainBox::new(&[("x", int(-1), int(1)), ("y", int(-1), int(1))]).unwrap();
        let goal = Goal::positive(f.clone(), Margin::zero());
        let cert = certify(&goal, &bx, &CertifyOptions::default()).unwrap().certificate().unwrap().clone();
        assert!(verify_certificate(&cert, &goal).unwrap());
        let json = cert.to_json().unwrap();
        assert_eq!(Certificate::from_json(&json).unwrap(), cert);

        let mut t = cert.clone();
        t.leaves[0].replay_lower = "1000".into();
        assert!(!verify_certificate(&t, &goal).unwrap());
        let mut t = cert.clone();
        t.leaves.pop();
        t.leaf_count -= 1;
        assert!(!verify_certificate(&t, &goal).unwrap());
        let other = Goal::positive(rp("x^4 - x*y + y^2 + 1/6"), Margin::zero());
        assert!(matches!(verify_certificate(&cert, &other), Err(CertifyError::StructuralMismatch(_))));
    }
}
