//! Executes parsed commands, optionally against an oracle in lockstep.
//!
//! Vertices are numbered by creation order. Answers are computed as
//! [`Answer`] values over those numbers on each side, compared, and only then
//! rendered with the script's own ids.

use std::collections::HashMap;

use dft_core::centrality;
use dft_core::lockstep::{Answer, Divergence};
use dft_core::oracle::{NaiveForest, NaiveGraph};
use dft_core::{BlockForest, Error, Forest, Result, Vertex};

use crate::script::{ForestAsk, ForestCmd, GraphCmd};

fn render(a: &Answer, names: &[String]) -> String {
    match a {
        Answer::Int(x) => x.to_string(),
        Answer::Float(x) => x.to_string(),
        Answer::Bool(b) => b.to_string(),
        Answer::Vertex(None) => "none".into(),
        Answer::Vertex(Some(i)) => names[*i].clone(),
        Answer::Vertices(vs) => vs
            .iter()
            .map(|&i| names[i].as_str())
            .collect::<Vec<_>>()
            .join(" "),
        Answer::Failed(code) => format!("error: {code}"),
    }
}

fn agree(a: &Answer, b: &Answer) -> bool {
    match (a, b) {
        (Answer::Float(x), Answer::Float(y)) => {
            (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0)
        }
        _ => a == b,
    }
}

fn answer(r: Result<Answer>) -> Answer {
    r.unwrap_or_else(|e| Answer::Failed(e.code()))
}

/// Turns an update outcome into its output line and compares it with the
/// oracle's outcome, when there is one.
fn settle(
    fast: Result<()>,
    slow: Option<Result<()>>,
    names: &[String],
) -> std::result::Result<Option<String>, Divergence> {
    let code = |r: &Result<()>| r.as_ref().err().map(Error::code);
    if let Some(s) = slow {
        if code(&fast) != code(&s) {
            return Err(Divergence(format!(
                "update outcome {:?} vs oracle {:?}",
                code(&fast),
                code(&s)
            )));
        }
    }
    Ok(fast.err().map(|e| render(&Answer::Failed(e.code()), names)))
}

fn compare(
    fast: Answer,
    slow: Option<Answer>,
    names: &[String],
) -> std::result::Result<Option<String>, Divergence> {
    if let Some(s) = slow {
        if !agree(&fast, &s) {
            return Err(Divergence(format!(
                "answer `{}` vs oracle `{}`",
                render(&fast, names),
                render(&s, names)
            )));
        }
    }
    Ok(Some(render(&fast, names)))
}

/// A forest session. Each command yields at most one output line.
pub struct ForestSession {
    fast: Forest,
    slow: Option<NaiveForest>,
    names: Vec<String>,
    live: HashMap<String, usize>,
    fast_of: Vec<Vertex>,
    slow_of: Vec<usize>,
    fast_name: HashMap<Vertex, usize>,
    slow_name: HashMap<usize, usize>,
}

impl ForestSession {
    pub fn new(verify: bool) -> Self {
        ForestSession {
            fast: Forest::new(),
            slow: verify.then(NaiveForest::new),
            names: Vec::new(),
            live: HashMap::new(),
            fast_of: Vec::new(),
            slow_of: Vec::new(),
            fast_name: HashMap::new(),
            slow_name: HashMap::new(),
        }
    }

    fn key(&self, name: &str) -> Result<usize> {
        self.live
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.into()))
    }

    fn forget(&mut self, k: usize) {
        self.live.remove(&self.names[k]);
        self.fast_name.remove(&self.fast_of[k]);
        if self.slow.is_some() {
            self.slow_name.remove(&self.slow_of[k]);
        }
    }

    pub fn run(&mut self, cmd: &ForestCmd) -> std::result::Result<Option<String>, Divergence> {
        use ForestCmd as C;
        let ask = match cmd {
            C::Ask(q) => q,
            C::Vertex(name, val) => {
                if self.live.contains_key(name) {
                    return settle(Err(Error::DuplicateVertex(name.clone())), None, &self.names);
                }
                let k = self.names.len();
                let v = self.fast.add_vertex(*val);
                self.names.push(name.clone());
                self.live.insert(name.clone(), k);
                self.fast_of.push(v);
                self.fast_name.insert(v, k);
                if let Some(s) = &mut self.slow {
                    let id = s.add_vertex(*val);
                    self.slow_of.push(id);
                    self.slow_name.insert(id, k);
                }
                return Ok(None);
            }
            C::Link(u, v, w) => {
                return self.update2(
                    u,
                    v,
                    |f, a, b| f.link_weighted(a, b, *w),
                    |s, a, b| s.link(a, b, *w),
                );
            }
            C::Cut(v) => return self.update(v, false, Forest::cut, NaiveForest::cut),
            C::Condense(v) => return self.update(v, true, Forest::condense, NaiveForest::condense),
            C::Erase(v) => return self.update(v, true, Forest::erase, NaiveForest::erase),
            C::Evert(v) => return self.update(v, false, Forest::evert, NaiveForest::evert),
            C::SetVal(v, x) => {
                return self.update(
                    v,
                    false,
                    |f, a| f.change_val(a, *x),
                    |s, a| s.change_val(a, *x),
                )
            }
            C::AddPath(v, x) => {
                return self.update(
                    v,
                    false,
                    |f, a| f.add_to_path(a, *x),
                    |s, a| s.add_to_path(a, *x),
                )
            }
            C::AddSub(v, x) => {
                return self.update(
                    v,
                    false,
                    |f, a| f.add_to_subtree(a, *x),
                    |s, a| s.add_to_subtree(a, *x),
                )
            }
        };
        let fast = answer(self.ask_fast(ask));
        let slow = self.slow.is_some().then(|| answer(self.ask_slow(ask)));
        compare(fast, slow, &self.names)
    }

    fn update(
        &mut self,
        v: &str,
        deletes: bool,
        fast: impl FnOnce(&mut Forest, Vertex) -> Result<()>,
        slow: impl FnOnce(&mut NaiveForest, usize) -> Result<()>,
    ) -> std::result::Result<Option<String>, Divergence> {
        let k = match self.key(v) {
            Ok(k) => k,
            Err(e) => return settle(Err(e), None, &self.names),
        };
        let f = fast(&mut self.fast, self.fast_of[k]);
        let s = self.slow.as_mut().map(|s| slow(s, self.slow_of[k]));
        let ok = f.is_ok();
        let out = settle(f, s, &self.names)?;
        if deletes && ok {
            self.forget(k);
        }
        Ok(out)
    }

    fn update2(
        &mut self,
        u: &str,
        v: &str,
        fast: impl FnOnce(&mut Forest, Vertex, Vertex) -> Result<()>,
        slow: impl FnOnce(&mut NaiveForest, usize, usize) -> Result<()>,
    ) -> std::result::Result<Option<String>, Divergence> {
        let (a, b) = match self.key(u).and_then(|a| Ok((a, self.key(v)?))) {
            Ok(p) => p,
            Err(e) => return settle(Err(e), None, &self.names),
        };
        let f = fast(&mut self.fast, self.fast_of[a], self.fast_of[b]);
        let s = self
            .slow
            .as_mut()
            .map(|s| slow(s, self.slow_of[a], self.slow_of[b]));
        settle(f, s, &self.names)
    }

    fn fv(&self, name: &str) -> Result<Vertex> {
        self.key(name).map(|k| self.fast_of[k])
    }

    fn fname(&self, v: Option<Vertex>) -> Answer {
        Answer::Vertex(v.map(|x| self.fast_name[&x]))
    }

    fn ask_fast(&mut self, q: &ForestAsk) -> Result<Answer> {
        use ForestAsk as Q;
        let opt = |m: Option<i64>| m.map_or(Answer::Vertex(None), Answer::Int);
        Ok(match q {
            Q::Root(v) => {
                let r = self.fast.root(self.fv(v)?)?;
                self.fname(Some(r))
            }
            Q::Parent(v) => {
                let p = self.fast.parent(self.fv(v)?)?;
                self.fname(p)
            }
            Q::Anc(v, k) => {
                let a = self.fast.ancestor(self.fv(v)?, *k)?;
                self.fname(a)
            }
            Q::Lca(u, v) => {
                let (a, b) = (self.fv(u)?, self.fv(v)?);
                let w = self.fast.lca(a, b)?;
                self.fname(Some(w))
            }
            Q::Children(v) => {
                let cs = self.fast.children(self.fv(v)?)?;
                Answer::Vertices(cs.into_iter().map(|c| self.fast_name[&c]).collect())
            }
            Q::Depth(v) => Answer::Int(self.fast.depth(self.fv(v)?)? as i64),
            Q::Size(v) => Answer::Int(self.fast.subtree_size(self.fv(v)?)?),
            Q::SubSum(v) => Answer::Int(self.fast.subtree_sum(self.fv(v)?)?),
            Q::SubMax(v) => Answer::Int(self.fast.subtree_max(self.fv(v)?)?),
            Q::MaxChild(v) => opt(self.fast.maxsum_child(self.fv(v)?)?),
            Q::Degree(v) => Answer::Int(self.fast.degree(self.fv(v)?)? as i64),
            Q::Val(v) => Answer::Int(self.fast.effective_val(self.fv(v)?)?),
            Q::Dist(u, v) => {
                let (a, b) = (self.fv(u)?, self.fv(v)?);
                Answer::Int(self.fast.distance(a, b)? as i64)
            }
            Q::WDist(u, v) => {
                let (a, b) = (self.fv(u)?, self.fv(v)?);
                Answer::Float(self.fast.weighted_distance(a, b)?)
            }
            Q::Desc(u, v) => {
                let (a, b) = (self.fv(u)?, self.fv(v)?);
                Answer::Bool(self.fast.is_descendant(a, b)?)
            }
            Q::Same(u, v) => {
                let (a, b) = (self.fv(u)?, self.fv(v)?);
                Answer::Bool(self.fast.same_tree(a, b)?)
            }
            Q::Bc(v) => {
                let a = self.fv(v)?;
                Answer::Int(centrality::betweenness(&mut self.fast, a)?)
            }
            Q::Farness(v) => {
                let a = self.fv(v)?;
                Answer::Float(centrality::farness(&mut self.fast, a)?)
            }
        })
    }

    fn ask_slow(&self, q: &ForestAsk) -> Result<Answer> {
        use ForestAsk as Q;
        let s = self.slow.as_ref().expect("oracle present");
        let id = |name: &str| self.key(name).map(|k| self.slow_of[k]);
        let name = |v: Option<usize>| Answer::Vertex(v.map(|x| self.slow_name[&x]));
        let int = |x: usize| Answer::Int(x as i64);
        Ok(match q {
            Q::Root(v) => name(Some(s.root(id(v)?)?)),
            Q::Parent(v) => name(s.parent(id(v)?)?),
            Q::Anc(v, k) => name(s.ancestor(id(v)?, *k as usize)?),
            Q::Lca(u, v) => {
                let (a, b) = (id(u)?, id(v)?);
                if !s.same_tree(a, b)? {
                    return Err(Error::DifferentTrees);
                }
                name(Some(s.lca(a, b)?))
            }
            Q::Children(v) => Answer::Vertices(
                s.children(id(v)?)?
                    .into_iter()
                    .map(|c| self.slow_name[&c])
                    .collect(),
            ),
            Q::Depth(v) => int(s.depth(id(v)?)?),
            Q::Size(v) => int(s.subtree_size(id(v)?)?),
            Q::SubSum(v) => Answer::Int(s.subtree_sum(id(v)?)?),
            Q::SubMax(v) => Answer::Int(s.subtree_max(id(v)?)?),
            Q::MaxChild(v) => s
                .maxsum_child(id(v)?)?
                .map_or(Answer::Vertex(None), Answer::Int),
            Q::Degree(v) => int(s.degree(id(v)?)?),
            Q::Val(v) => Answer::Int(s.effective_val(id(v)?)?),
            Q::Dist(u, v) => int(s.distance(id(u)?, id(v)?)?),
            Q::WDist(u, v) => Answer::Float(s.weighted_distance(id(u)?, id(v)?)?),
            Q::Desc(u, v) => Answer::Bool(s.is_descendant(id(u)?, id(v)?)?),
            Q::Same(u, v) => Answer::Bool(s.same_tree(id(u)?, id(v)?)?),
            Q::Bc(v) => Answer::Int(s.betweenness(id(v)?)?),
            Q::Farness(v) => Answer::Float(s.farness(id(v)?)?),
        })
    }
}

/// A streaming-graph session over a block forest.
pub struct GraphSession {
    fast: BlockForest<String>,
    slow: Option<(NaiveGraph, HashMap<String, usize>)>,
}

impl GraphSession {
    pub fn new(verify: bool) -> Self {
        GraphSession {
            fast: BlockForest::new(),
            slow: verify.then(|| (NaiveGraph::new(), HashMap::new())),
        }
    }

    pub fn run(&mut self, cmd: &GraphCmd) -> std::result::Result<Option<String>, Divergence> {
        use GraphCmd as C;
        match cmd {
            C::Vertex(v) => {
                let f = self.fast.add_vertex(v.clone());
                let s = self.slow.as_mut().map(|(g, ids)| {
                    if ids.contains_key(v) {
                        return Err(Error::DuplicateVertex(v.clone()));
                    }
                    ids.insert(v.clone(), g.add_vertex());
                    Ok(())
                });
                settle(f, s, &[])
            }
            C::Edge(u, v) => {
                let f = self.fast.insert_edge(u, v);
                let s = self.slow.as_ref().map(|_| self.ids(u, v)).map(|r| {
                    let (a, b) = r?;
                    self.slow.as_mut().unwrap().0.add_edge(a, b)
                });
                settle(f, s, &[])
            }
            _ => {
                let fast = answer(self.ask_fast(cmd));
                let slow = self.slow.is_some().then(|| answer(self.ask_slow(cmd)));
                compare(fast, slow, &[])
            }
        }
    }

    fn id(&self, v: &str) -> Result<usize> {
        let (_, ids) = self.slow.as_ref().expect("oracle present");
        ids.get(v)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(v.into()))
    }

    fn ids(&self, u: &str, v: &str) -> Result<(usize, usize)> {
        Ok((self.id(u)?, self.id(v)?))
    }

    fn ask_fast(&mut self, cmd: &GraphCmd) -> Result<Answer> {
        use GraphCmd as C;
        let f = &mut self.fast;
        Ok(match cmd {
            C::Conn(u, v) => Answer::Bool(f.connected(u, v)?),
            C::Artic(v) => Answer::Bool(f.is_articulation(v)?),
            C::Bridge(u, v) => Answer::Bool(f.is_bridge(u, v)?),
            C::Impact(v) => Answer::Int(f.impact(v)?),
            C::CompSize(v) => Answer::Int(f.component_size(v)?),
            C::Vertex(_) | C::Edge(..) => unreachable!("updates are not queries"),
        })
    }

    fn ask_slow(&self, cmd: &GraphCmd) -> Result<Answer> {
        use GraphCmd as C;
        let g = &self.slow.as_ref().expect("oracle present").0;
        Ok(match cmd {
            C::Conn(u, v) => {
                let (a, b) = self.ids(u, v)?;
                Answer::Bool(g.connected(a, b))
            }
            C::Artic(v) => Answer::Bool(g.articulation_points().contains(&self.id(v)?)),
            C::Bridge(u, v) => {
                let (a, b) = self.ids(u, v)?;
                Answer::Bool(g.has_edge(a, b) && g.bridges().contains(&(a.min(b), a.max(b))))
            }
            C::Impact(v) => Answer::Int(g.impact(self.id(v)?) as i64),
            C::CompSize(v) => Answer::Int(g.component_size(self.id(v)?) as i64),
            C::Vertex(_) | C::Edge(..) => unreachable!("updates are not queries"),
        })
    }
}
