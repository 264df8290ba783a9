//! Bounded backtracking search for a certificate.
//!
//! Stages run in the order components (1), separatrix curves (2), boundary
//! curves (6), families and points (3), moduli (4a, 4b) and the m relation
//! (5). Candidates are tried in label order, so the first witness is
//! deterministic. Attractor maps are never searched.

use std::collections::{BTreeMap, BTreeSet};

use crate::mat2::Mat2;
use crate::moduli::log_ratio;
use crate::scalar::{rel_eq, Real};
use crate::scheme::{Certificate, Scheme, TangencyFamily, TangencyPoint};

use super::conditions::{check_condition4a, check_condition4b, check_condition5};
use super::gl2z::all_gl2z_conjugators;
use super::{
    verify_certificate, CheckOptions, ConditionResult, ConditionStatus, SearchSummary, Verdict,
    CONDITIONS,
};

const STAGES: [&str; 7] = ["1", "2", "6", "3", "4a", "4b", "5"];

#[derive(Clone, Default)]
struct State {
    cert: Certificate,
    saddle_fwd: BTreeMap<String, String>,
    saddle_back: BTreeMap<String, String>,
    attr_fwd: BTreeMap<String, String>,
    attr_back: BTreeMap<String, String>,
}

/// Records `a ↦ b` in a partial bijection; false on conflict.
fn bind(fwd: &mut BTreeMap<String, String>, back: &mut BTreeMap<String, String>, a: &str, b: &str) -> bool {
    match (fwd.get(a), back.get(b)) {
        (Some(x), _) if x != b => false,
        (_, Some(y)) if y != a => false,
        _ => {
            fwd.insert(a.to_string(), b.to_string());
            back.insert(b.to_string(), a.to_string());
            true
        }
    }
}

fn class_ok(p: &Mat2, c: [i64; 2], d: [i64; 2]) -> bool {
    let v = p.apply(c);
    v == d || v == [-d[0], -d[1]]
}

struct Search<'a, R> {
    s1: &'a Scheme<R>,
    s2: &'a Scheme<R>,
    opts: &'a CheckOptions<R>,
    cycles1: Vec<Vec<&'a str>>,
    cycles2: Vec<Vec<&'a str>>,
    conjugators: BTreeMap<(Mat2, Mat2), Vec<Mat2>>,
    nodes: u64,
    exhausted: bool,
    deepest: usize,
    note: Option<String>,
}

fn cycles<R: Real>(s: &Scheme<R>) -> Vec<Vec<&str>> {
    let mut ids: Vec<&str> = s.components.iter().map(|c| c.id.as_str()).collect();
    ids.sort();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in ids {
        if seen.contains(start) {
            continue;
        }
        let mut cyc = Vec::new();
        let mut cur = start;
        while seen.insert(cur) {
            cyc.push(cur);
            cur = s.component(cur).map(|c| c.image.as_str()).unwrap_or(start);
        }
        out.push(cyc);
    }
    out
}

impl<'a, R: Real> Search<'a, R> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.opts.budget {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn reach(&mut self, stage: usize) {
        if stage > self.deepest {
            self.deepest = stage;
            self.note = None;
        }
    }

    fn blocked(&mut self, stage: usize, msg: impl FnOnce() -> String) {
        if stage == self.deepest && self.note.is_none() {
            self.note = Some(msg());
        }
    }

    fn counts(s: &Scheme<R>, comp: &str) -> [usize; 5] {
        [
            s.s_curves.iter().filter(|c| c.component == comp).count(),
            s.u_curves.iter().filter(|c| c.component == comp).count(),
            s.s_boundary.iter().filter(|c| c.component == comp).count(),
            s.u_boundary.iter().filter(|c| c.component == comp).count(),
            s.points().filter(|(_, p)| p.component == comp).count(),
        ]
    }

    fn action(s: &Scheme<R>, comp: &str) -> Mat2 {
        s.component(comp).map(|c| c.action).unwrap_or(Mat2::IDENTITY)
    }

    fn return_map(s: &Scheme<R>, cyc: &[&str], start: usize) -> Option<Mat2> {
        let n = cyc.len();
        (0..n).try_fold(Mat2::IDENTITY, |acc, s_| {
            Self::action(s, cyc[(start + s_) % n]).checked_mul(&acc)
        })
    }

    /// Which targets each curve of the cycle could take under these basis
    /// changes; two choices with equal signatures behave identically in
    /// every later stage.
    fn signature(&self, beta: &[(&str, &str, Mat2)]) -> Option<Vec<Vec<&'a str>>> {
        let mut sig = Vec::new();
        for (i, j, p) in beta {
            for c in self.s1.curves().filter(|c| c.component == *i) {
                let t: Vec<&str> = self
                    .s2
                    .curves()
                    .filter(|d| d.component == *j && d.kind == c.kind && class_ok(p, c.class, d.class))
                    .map(|d| d.id.as_str())
                    .collect();
                if t.is_empty() {
                    return None;
                }
                sig.push(t);
            }
            for (k, b) in self.s1.boundary_curves().filter(|(_, b)| b.component == *i) {
                let t: Vec<&str> = self
                    .s2
                    .boundary_curves()
                    .filter(|(l, d)| d.component == *j && *l == k && class_ok(p, b.class, d.class))
                    .map(|(_, d)| d.id.as_str())
                    .collect();
                if t.is_empty() {
                    return None;
                }
                sig.push(t);
            }
        }
        Some(sig)
    }

    fn components(&mut self, ci: usize, used: &mut Vec<bool>, st: &State) -> Option<Certificate> {
        self.reach(0);
        if ci == self.cycles1.len() {
            return self.curves(0, st);
        }
        let cyc = self.cycles1[ci].clone();
        let n = cyc.len();
        for j in 0..self.cycles2.len() {
            if used[j] || self.cycles2[j].len() != n {
                continue;
            }
            let cyc2 = self.cycles2[j].clone();
            for t in 0..n {
                if !self.tick() {
                    return None;
                }
                let beta: Vec<(&str, &str)> = (0..n).map(|s| (cyc[s], cyc2[(t + s) % n])).collect();
                if beta
                    .iter()
                    .any(|(a, b)| Self::counts(self.s1, a) != Self::counts(self.s2, b))
                {
                    self.blocked(0, || format!("no component matching preserves curve and point counts for {}", cyc[0]));
                    continue;
                }
                let (Some(r), Some(r2)) = (Self::return_map(self.s1, &cyc, 0), Self::return_map(self.s2, &cyc2, t))
                else {
                    continue;
                };
                let bound = self.opts.matrix_bound;
                let sols = self
                    .conjugators
                    .entry((r, r2))
                    .or_insert_with(|| all_gl2z_conjugators(r, r2, bound))
                    .clone();
                if sols.is_empty() {
                    self.blocked(0, || {
                        format!(
                            "no P with entries ≤ {bound} conjugates {r} (cycle of {}) to {r2} (cycle of {})",
                            cyc[0], cyc2[t]
                        )
                    });
                }
                let mut seen = BTreeSet::new();
                for p0 in sols {
                    if !self.tick() {
                        return None;
                    }
                    let mut ps = vec![p0];
                    for s in 0..n - 1 {
                        let a_inv = Self::action(self.s1, cyc[s]).inverse();
                        let next = a_inv.and_then(|ai| {
                            Self::action(self.s2, beta[s].1)
                                .checked_mul(&ps[s])
                                .and_then(|x| x.checked_mul(&ai))
                        });
                        match next {
                            Some(p) => ps.push(p),
                            None => break,
                        }
                    }
                    if ps.len() != n {
                        continue;
                    }
                    let triples: Vec<(&str, &str, Mat2)> =
                        beta.iter().zip(&ps).map(|((a, b), p)| (*a, *b, *p)).collect();
                    let Some(sig) = self.signature(&triples) else {
                        self.blocked(0, || format!("no basis change for {} is compatible with curve classes", cyc[0]));
                        continue;
                    };
                    if !seen.insert(sig) {
                        continue;
                    }
                    let mut next = st.clone();
                    for (a, b, p) in &triples {
                        next.cert.component_map.insert(a.to_string(), b.to_string());
                        next.cert.basis_changes.insert(a.to_string(), *p);
                    }
                    used[j] = true;
                    let res = self.components(ci + 1, used, &next);
                    used[j] = false;
                    if res.is_some() || self.exhausted {
                        return res;
                    }
                }
            }
        }
        None
    }

    fn curves(&mut self, idx: usize, st: &State) -> Option<Certificate> {
        self.reach(1);
        let mut list: Vec<_> = self.s1.curves().collect();
        list.sort_by(|a, b| a.id.cmp(&b.id));
        if idx == list.len() {
            return self.boundary(0, st);
        }
        let c = list[idx];
        if st.cert.curve_map.contains_key(&c.id) {
            return self.curves(idx + 1, st);
        }
        let comp2 = &st.cert.component_map[&c.component];
        let p = st.cert.basis_changes[&c.component];
        let used: BTreeSet<&String> = st.cert.curve_map.values().collect();
        let mut cands: Vec<_> = self.s2.curves().collect();
        cands.sort_by(|a, b| a.id.cmp(&b.id));
        for d in cands {
            if used.contains(&d.id)
                || d.kind != c.kind
                || d.component != *comp2
                || !class_ok(&p, c.class, d.class)
            {
                continue;
            }
            if !self.tick() {
                return None;
            }
            let mut next = st.clone();
            if !bind(&mut next.saddle_fwd, &mut next.saddle_back, &c.saddle, &d.saddle) {
                continue;
            }
            next.cert.curve_map.insert(c.id.clone(), d.id.clone());
            // the partner is forced
            let (Some(cp), Some(dp)) = (self.s1.curve(&c.partner), self.s2.curve(&d.partner)) else {
                continue;
            };
            match next.cert.curve_map.get(&cp.id) {
                Some(x) if *x != dp.id => continue,
                Some(_) => {}
                None => {
                    if used.contains(&dp.id)
                        || dp.id == d.id
                        || cp.kind != dp.kind
                        || next.cert.component_map.get(&cp.component) != Some(&dp.component)
                        || !class_ok(&next.cert.basis_changes[&cp.component], cp.class, dp.class)
                    {
                        continue;
                    }
                    next.cert.curve_map.insert(cp.id.clone(), dp.id.clone());
                }
            }
            let res = self.curves(idx + 1, &next);
            if res.is_some() || self.exhausted {
                return res;
            }
        }
        self.blocked(1, || format!("no admissible image for separatrix curve {}", c.id));
        None
    }

    fn boundary(&mut self, idx: usize, st: &State) -> Option<Certificate> {
        self.reach(2);
        let mut list: Vec<_> = self.s1.boundary_curves().collect();
        list.sort_by(|a, b| a.1.id.cmp(&b.1.id));
        if idx == list.len() {
            return self.families(0, st);
        }
        let (k, b) = list[idx];
        let comp2 = &st.cert.component_map[&b.component];
        let p = st.cert.basis_changes[&b.component];
        let used: BTreeSet<&String> = st.cert.boundary_curve_map.values().collect();
        let mut cands: Vec<_> = self.s2.boundary_curves().collect();
        cands.sort_by(|a, b| a.1.id.cmp(&b.1.id));
        let a1 = self.s1.attractor(&b.attractor);
        for (l, d) in cands {
            if used.contains(&d.id) || l != k || d.component != *comp2 || !class_ok(&p, b.class, d.class) {
                continue;
            }
            let a2 = self.s2.attractor(&d.attractor);
            let compatible = match (a1, a2) {
                (Some(x), Some(y)) => {
                    x.kind == y.kind
                        && x.rank == y.rank
                        && x.periodic_components == y.periodic_components
                        && x.boundary_points.len() == y.boundary_points.len()
                }
                _ => false,
            };
            if !compatible || !self.tick() {
                if self.exhausted {
                    return None;
                }
                continue;
            }
            let mut next = st.clone();
            if !bind(&mut next.attr_fwd, &mut next.attr_back, &b.attractor, &d.attractor) {
                continue;
            }
            next.cert.boundary_curve_map.insert(b.id.clone(), d.id.clone());
            let res = self.boundary(idx + 1, &next);
            if res.is_some() || self.exhausted {
                return res;
            }
        }
        self.blocked(2, || format!("no admissible image for boundary curve {}", b.id));
        None
    }

    fn families(&mut self, idx: usize, st: &State) -> Option<Certificate> {
        self.reach(3);
        let mut list: Vec<_> = self.s1.tangencies.iter().collect();
        list.sort_by(|a, b| a.id.cmp(&b.id));
        if idx == list.len() {
            return self.moduli(st);
        }
        let f = list[idx];
        let used: BTreeSet<&String> = st.cert.tangency_map.values().collect();
        let mut cands: Vec<_> = self.s2.tangencies.iter().collect();
        cands.sort_by(|a, b| a.id.cmp(&b.id));
        for g in cands {
            if used.contains(&g.id) || g.points.len() != f.points.len() {
                continue;
            }
            if !rel_eq(log_ratio(f.lambda, f.mu), log_ratio(g.lambda, g.mu), self.opts.tol) {
                self.blocked(3, || format!("no family with the log ratio of {}", f.id));
                continue;
            }
            let saddles_ok = [(&f.saddle_s, &g.saddle_s), (&f.saddle_u, &g.saddle_u)]
                .iter()
                .all(|(a, b)| st.saddle_fwd.get(*a).is_none_or(|x| x == *b)
                    && st.saddle_back.get(*b).is_none_or(|y| y == *a));
            if !saddles_ok || !self.tick() {
                if self.exhausted {
                    return None;
                }
                continue;
            }
            let mut next = st.clone();
            next.cert.tangency_map.insert(f.id.clone(), g.id.clone());
            let mut pts: Vec<_> = f.points.iter().collect();
            pts.sort_by(|a, b| a.id.cmp(&b.id));
            let res = self.points(idx, &pts, 0, g, &next);
            if res.is_some() || self.exhausted {
                return res;
            }
        }
        self.blocked(3, || format!("no admissible image for tangency family {}", f.id));
        None
    }

    fn points(
        &mut self,
        fidx: usize,
        pts: &[&TangencyPoint<R>],
        i: usize,
        g: &TangencyFamily<R>,
        st: &State,
    ) -> Option<Certificate> {
        if i == pts.len() {
            return self.families(fidx + 1, st);
        }
        let a = pts[i];
        let used: BTreeSet<&String> = st.cert.point_map.values().collect();
        let mut cands: Vec<_> = g.points.iter().collect();
        cands.sort_by(|x, y| x.id.cmp(&y.id));
        for b in cands {
            if used.contains(&b.id)
                || b.order != a.order
                || st.cert.component_map.get(&a.component) != Some(&b.component)
                || st.cert.curve_map.get(&a.host_curve) != Some(&b.host_curve)
            {
                continue;
            }
            if !self.tick() {
                return None;
            }
            let mut next = st.clone();
            next.cert.point_map.insert(a.id.clone(), b.id.clone());
            let res = self.points(fidx, pts, i + 1, g, &next);
            if res.is_some() || self.exhausted {
                return res;
            }
        }
        self.blocked(3, || format!("no admissible image for tangency point {}", a.id));
        None
    }

    fn moduli(&mut self, st: &State) -> Option<Certificate> {
        if !self.tick() {
            return None;
        }
        self.reach(4);
        let r = check_condition4a(self.s1, self.s2, &st.cert, self.opts.tol);
        if !r.passed() {
            self.blocked(4, || r.diagnostics.join("; "));
            return None;
        }
        self.reach(5);
        let mut cert = st.cert.clone();
        cert.m_values.clear();
        let r = check_condition4b(self.s1, self.s2, &mut cert, self.opts.tol, self.opts.m_bound);
        if !r.passed() {
            self.blocked(5, || r.diagnostics.join("; "));
            return None;
        }
        self.reach(6);
        let r = check_condition5(self.s1, self.s2, &cert);
        if !r.passed() {
            self.blocked(6, || r.diagnostics.join("; "));
            return None;
        }
        self.reach(7);
        let (v, _) = verify_certificate(self.s1, self.s2, &cert, self.opts);
        if v.per_condition.iter().any(|c| c.status == ConditionStatus::Fail) {
            return None;
        }
        Some(cert)
    }
}

/// Searches for a certificate within the bounds of `opts`. A found witness
/// is re-verified and the verdict of that verification is returned; when
/// attractors are present condition 7 stays `skipped-needs-certificate`.
pub fn search_certificate<R: Real>(s1: &Scheme<R>, s2: &Scheme<R>, opts: &CheckOptions<R>) -> Verdict {
    let mut search = Search {
        s1,
        s2,
        opts,
        cycles1: cycles(s1),
        cycles2: cycles(s2),
        conjugators: BTreeMap::new(),
        nodes: 0,
        exhausted: false,
        deepest: 0,
        note: None,
    };
    let found = if s1.components.len() != s2.components.len() {
        search.note = Some(format!(
            "{} components vs {}",
            s1.components.len(),
            s2.components.len()
        ));
        None
    } else {
        let mut used = vec![false; search.cycles2.len()];
        search.components(0, &mut used, &State::default())
    };
    if let Some(cert) = found {
        let (mut v, _) = verify_certificate(s1, s2, &cert, opts);
        v.witness = Some(cert);
        v.search = Some(SearchSummary {
            nodes: search.nodes,
            budget_exhausted: false,
            blocking: None,
        });
        return v;
    }
    let has_attractors = !s1.attractors.is_empty() || !s2.attractors.is_empty();
    let blocking = STAGES[search.deepest.min(STAGES.len() - 1)];
    let stage_of = |id: &str| STAGES.iter().position(|s| *s == id);
    let per_condition = CONDITIONS
        .iter()
        .map(|&id| {
            let (status, diagnostics) = match stage_of(id) {
                None if has_attractors => (
                    ConditionStatus::SkippedNeedsCertificate,
                    vec!["attractor maps are not searched; supply a certificate".to_string()],
                ),
                None => (ConditionStatus::NotReached, vec![]),
                Some(i) if i < search.deepest => (
                    ConditionStatus::Pass,
                    vec!["satisfiable by a partial assignment".to_string()],
                ),
                Some(i) if i == search.deepest && !search.exhausted => {
                    let mut d = vec![format!(
                        "no assignment within bounds (matrix entries ≤ {}, |m| ≤ {}) satisfies this condition",
                        opts.matrix_bound, opts.m_bound
                    )];
                    d.extend(search.note.clone());
                    (ConditionStatus::Fail, d)
                }
                Some(i) if i == search.deepest => (
                    ConditionStatus::NotReached,
                    vec![format!("search budget of {} nodes exhausted", opts.budget)],
                ),
                Some(_) => (ConditionStatus::NotReached, vec![]),
            };
            ConditionResult {
                condition: id.to_string(),
                status,
                diagnostics,
            }
        })
        .collect();
    let mut v = Verdict::from_results(per_condition);
    v.search = Some(SearchSummary {
        nodes: search.nodes,
        budget_exhausted: search.exhausted,
        blocking: Some(blocking.to_string()),
    });
    v
}
