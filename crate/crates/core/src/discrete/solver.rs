use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{DiscreteGraph, SolverError};

/// Largest state space solved without an explicit budget increase.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Turn {
    Cops,
    Robber,
}

/// A position of the classical game. Cop order is irrelevant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteState {
    pub cops: Vec<u32>,
    pub robber: u32,
    pub turn: Turn,
}

/// Solved game for `k` cops on one graph.
///
/// Each state is labelled cop-win or not by the least fixpoint of backward
/// induction from capture states; cop-win states also carry their
/// remoteness (rounds to capture under optimal play). Moves are derived
/// from labels on demand.
#[derive(Debug, Clone)]
pub struct StrategyTable {
    graph: DiscreteGraph,
    k: usize,
    remoteness: Vec<u32>,
    dist: Vec<Vec<u32>>,
}

const UNWON: u32 = u32::MAX;

fn state_count(n: usize, k: usize) -> Option<u64> {
    (n as u64).checked_pow(k as u32 + 1)?.checked_mul(2)
}

/// All nondecreasing `k`-tuples over `0..n`.
fn sorted_tuples(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as usize) + 1 < n {
                let v = cur[i] + 1;
                for c in &mut cur[i..] {
                    *c = v;
                }
                break;
            }
        }
    }
}

/// Every assignment picking one entry of `choices[i]` per position.
fn product(choices: &[&[u32]], mut visit: impl FnMut(&[u32])) {
    let k = choices.len();
    let mut idx = vec![0usize; k];
    let mut cur: Vec<u32> = choices.iter().map(|c| c[0]).collect();
    loop {
        visit(&cur);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                cur[i] = choices[i][idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = choices[i][0];
        }
    }
}

impl StrategyTable {
    fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    fn code(&self, sorted: &[u32]) -> usize {
        let n = self.n();
        sorted.iter().rev().fold(0usize, |acc, &c| acc * n + c as usize)
    }

    fn id(&self, sorted: &[u32], robber: u32, turn: Turn) -> usize {
        let t = match turn {
            Turn::Cops => 0,
            Turn::Robber => 1,
        };
        ((self.code(sorted) * self.n()) + robber as usize) * 2 + t
    }

    fn decode(&self, id: usize) -> (Vec<u32>, u32, Turn) {
        let n = self.n();
        let turn = if id.is_multiple_of(2) { Turn::Cops } else { Turn::Robber };
        let robber = ((id / 2) % n) as u32;
        let mut code = id / 2 / n;
        let mut cops = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            cops.push((code % n) as u32);
            code /= n;
        }
        (cops, robber, turn)
    }

    fn solve(graph: DiscreteGraph, k: usize, budget: u64) -> Result<Self, SolverError> {
        if k == 0 {
            return Err(SolverError::NoCops);
        }
        let n = graph.vertex_count();
        let states = state_count(n, k).unwrap_or(u64::MAX);
        if states > budget {
            return Err(SolverError::BudgetExceeded { states, budget });
        }
        let dist = (0..n as u32).map(|v| graph.distances_from(v)).collect();
        let mut table = StrategyTable {
            graph,
            k,
            remoteness: vec![UNWON; states as usize],
            dist,
        };
        let mut pending = vec![0u16; states as usize];
        let mut queue = VecDeque::new();
        for cops in sorted_tuples(n, k) {
            for r in 0..n as u32 {
                let rid = table.id(&cops, r, Turn::Robber);
                let cid = table.id(&cops, r, Turn::Cops);
                if cops.contains(&r) {
                    table.remoteness[rid] = 0;
                    table.remoteness[cid] = 0;
                    queue.push_back(rid);
                    queue.push_back(cid);
                } else {
                    pending[rid] = table.graph.closed_neighborhood(r).len() as u16;
                }
            }
        }
        while let Some(s) = queue.pop_front() {
            let (cops, r, turn) = table.decode(s);
            let next = table.remoteness[s] + 1;
            match turn {
                Turn::Cops => {
                    // robber moved into this state from a neighbour
                    for &prev in table.graph.closed_neighborhood(r) {
                        let p = table.id(&cops, prev, Turn::Robber);
                        if table.remoteness[p] != UNWON {
                            continue;
                        }
                        pending[p] -= 1;
                        if pending[p] == 0 {
                            table.remoteness[p] = next;
                            queue.push_back(p);
                        }
                    }
                }
                Turn::Robber => {
                    for prev in table.cop_predecessors(&cops) {
                        let p = table.id(&prev, r, Turn::Cops);
                        if table.remoteness[p] == UNWON {
                            table.remoteness[p] = next;
                            queue.push_back(p);
                        }
                    }
                }
            }
        }
        Ok(table)
    }

    /// Sorted cop tuples that can move to `cops` in one round.
    fn cop_predecessors(&self, cops: &[u32]) -> Vec<Vec<u32>> {
        let choices: Vec<&[u32]> = cops
            .iter()
            .map(|&c| self.graph.closed_neighborhood(c))
            .collect();
        let mut out = Vec::new();
        product(&choices, |t| {
            let mut s = t.to_vec();
            s.sort_unstable();
            out.push(s);
        });
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn graph(&self) -> &DiscreteGraph {
        &self.graph
    }

    pub fn cop_count(&self) -> usize {
        self.k
    }

    pub fn graph_distance(&self, a: u32, b: u32) -> u32 {
        self.dist[a as usize][b as usize]
    }

    fn check(&self, state: &DiscreteState) -> Result<Vec<u32>, SolverError> {
        let n = self.n() as u32;
        if state.cops.len() != self.k
            || state.robber >= n
            || state.cops.iter().any(|&c| c >= n)
        {
            return Err(SolverError::UnknownState(format!("{state:?}")));
        }
        let mut sorted = state.cops.clone();
        sorted.sort_unstable();
        Ok(sorted)
    }

    /// Rounds to capture under optimal play, if the cops win from `state`.
    pub fn remoteness(&self, state: &DiscreteState) -> Result<Option<u32>, SolverError> {
        let sorted = self.check(state)?;
        let r = self.remoteness[self.id(&sorted, state.robber, state.turn)];
        Ok((r != UNWON).then_some(r))
    }

    pub fn is_cop_win(&self, state: &DiscreteState) -> Result<bool, SolverError> {
        Ok(self.remoteness(state)?.is_some())
    }

    /// A placement from which the cops win against every robber placement.
    pub fn cop_placement(&self) -> Option<Vec<u32>> {
        let n = self.n() as u32;
        sorted_tuples(self.n(), self.k).into_iter().find(|cops| {
            (0..n).all(|r| self.remoteness[self.id(cops, r, Turn::Cops)] != UNWON)
        })
    }

    /// Whether `k` cops win under the classical rules (cops place first).
    pub fn cops_win(&self) -> bool {
        self.cop_placement().is_some()
    }

    fn min_cop_distance(&self, cops: &[u32], r: u32) -> u32 {
        cops.iter().map(|&c| self.dist[c as usize][r as usize]).min().unwrap_or(u32::MAX)
    }

    /// Robber start against `cops` (cops to move next) that the robber
    /// survives, farthest from the cops first.
    pub fn robber_placement(&self, cops: &[u32]) -> Result<Option<u32>, SolverError> {
        let mut best = None;
        for r in 0..self.n() as u32 {
            let state = DiscreteState {
                cops: cops.to_vec(),
                robber: r,
                turn: Turn::Cops,
            };
            if self.is_cop_win(&state)? {
                continue;
            }
            let d = self.min_cop_distance(cops, r);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, r));
            }
        }
        Ok(best.map(|(_, r)| r))
    }

    /// Robber's move from a robber-to-move state.
    ///
    /// From a state the robber survives the move keeps him surviving,
    /// preferring the largest distance to the nearest cop; from a lost state
    /// it delays capture as long as possible.
    pub fn robber_move(&self, state: &DiscreteState) -> Result<u32, SolverError> {
        let sorted = self.check(state)?;
        if state.turn != Turn::Robber {
            return Err(SolverError::WrongTurn);
        }
        let r = state.robber;
        if sorted.contains(&r) {
            return Ok(r);
        }
        let mut best: Option<(u32, u32, u32)> = None;
        for &next in self.graph.closed_neighborhood(r) {
            let rem = self.remoteness[self.id(&sorted, next, Turn::Cops)];
            let d = self.min_cop_distance(&sorted, next);
            // key: survival first, then remoteness, then distance
            let key = (rem, d, u32::MAX - next);
            if best.is_none_or(|b| key > (b.0, b.1, b.2)) {
                best = Some(key);
            }
        }
        let (_, _, inv) = best.expect("closed neighbourhood is nonempty");
        Ok(u32::MAX - inv)
    }

    /// Cops' move from a cops-to-move state, aligned with `state.cops`.
    ///
    /// From a cop-win state every cop follows a move that lowers the
    /// remoteness by one; otherwise the cops minimise their summed distance
    /// to the robber. A captured state yields "stay".
    pub fn cop_move(&self, state: &DiscreteState) -> Result<Vec<u32>, SolverError> {
        let sorted = self.check(state)?;
        if state.turn != Turn::Cops {
            return Err(SolverError::WrongTurn);
        }
        let r = state.robber;
        if sorted.contains(&r) {
            return Ok(state.cops.clone());
        }
        let rem = self.remoteness[self.id(&sorted, r, Turn::Cops)];
        let choices: Vec<&[u32]> = sorted
            .iter()
            .map(|&c| self.graph.closed_neighborhood(c))
            .collect();
        let mut best: Option<(u64, Vec<u32>)> = None;
        product(&choices, |dest| {
            let mut key = dest.to_vec();
            key.sort_unstable();
            let score = if rem != UNWON {
                let next = self.remoteness[self.id(&key, r, Turn::Robber)];
                if next == UNWON || next + 1 != rem {
                    return;
                }
                0
            } else {
                dest.iter()
                    .map(|&c| u64::from(self.dist[c as usize][r as usize]))
                    .sum()
            };
            if best.as_ref().is_none_or(|(s, _)| score < *s) {
                best = Some((score, dest.to_vec()));
            }
        });
        let (_, sorted_dest) = best.expect("some move realises the label");
        // map sorted positions back onto the caller's cop order
        let mut order: Vec<usize> = (0..self.k).collect();
        order.sort_by_key(|&i| (state.cops[i], i));
        let mut out = vec![0; self.k];
        for (slot, &i) in order.iter().enumerate() {
            out[i] = sorted_dest[slot];
        }
        Ok(out)
    }

    pub fn to_file(&self) -> TableFile {
        TableFile {
            k: self.k,
            vertices: self.graph.labels().to_vec(),
            edges: self.graph.edges(),
            cops_win: self.cops_win(),
            remoteness: self
                .remoteness
                .iter()
                .map(|&r| (r != UNWON).then_some(r))
                .collect(),
        }
    }

    pub fn from_file(file: &TableFile) -> Result<Self, SolverError> {
        let graph = DiscreteGraph::with_labels(file.vertices.clone(), &file.edges)?;
        let n = graph.vertex_count();
        let expected = state_count(n, file.k).unwrap_or(u64::MAX);
        if file.k == 0 || file.remoteness.len() as u64 != expected {
            return Err(SolverError::UnknownState(format!(
                "table holds {} states, expected {expected}",
                file.remoteness.len()
            )));
        }
        // tables are small; re-solving is the simplest full consistency check
        let solved = Self::solve(graph, file.k, expected)?;
        let agrees = solved
            .remoteness
            .iter()
            .zip(&file.remoteness)
            .all(|(&r, f)| *f == (r != UNWON).then_some(r));
        if !agrees || solved.cops_win() != file.cops_win {
            return Err(SolverError::UnknownState("table disagrees with the solved game".into()));
        }
        Ok(solved)
    }
}

/// JSON form of a solved table. `remoteness` is indexed by the dense state
/// id `((code(sorted cops) * n + robber) * 2 + turn)`, `turn` 0 for cops.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableFile {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<(u32, u32)>,
    pub cops_win: bool,
    pub remoteness: Vec<Option<u32>>,
}

/// Solve the game for `k` cops. The flag is whether the cops win.
pub fn k_copwin(
    g: &DiscreteGraph,
    k: usize,
    budget: u64,
) -> Result<(bool, StrategyTable), SolverError> {
    let table = StrategyTable::solve(g.clone(), k, budget)?;
    Ok((table.cops_win(), table))
}

/// Least number of cops that win on `g`.
pub fn cop_number_discrete(g: &DiscreteGraph, budget: u64) -> Result<usize, SolverError> {
    for k in 1..=g.vertex_count() {
        if k_copwin(g, k, budget)?.0 {
            return Ok(k);
        }
    }
    unreachable!("a cop on every vertex always wins")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_and_products() {
        assert_eq!(sorted_tuples(3, 2).len(), 6);
        assert_eq!(sorted_tuples(4, 1).len(), 4);
        let mut count = 0;
        product(&[&[1, 2], &[3, 4, 5]], |_| count += 1);
        assert_eq!(count, 6);
    }

    #[test]
    fn cycle_four() {
        let c4 = DiscreteGraph::cycle(4).unwrap();
        assert!(!k_copwin(&c4, 1, DEFAULT_BUDGET).unwrap().0);
        assert!(k_copwin(&c4, 2, DEFAULT_BUDGET).unwrap().0);
        assert_eq!(cop_number_discrete(&c4, DEFAULT_BUDGET).unwrap(), 2);
    }

    #[test]
    fn small_named_graphs() {
        let p3 = DiscreteGraph::path(3).unwrap();
        assert!(k_copwin(&p3, 1, DEFAULT_BUDGET).unwrap().0);
        let single = DiscreteGraph::new(1, &[]).unwrap();
        assert_eq!(cop_number_discrete(&single, DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(cop_number_discrete(&DiscreteGraph::petersen(), DEFAULT_BUDGET).unwrap(), 3);
    }

    #[test]
    fn budget_and_state_errors() {
        let p = DiscreteGraph::petersen();
        assert!(matches!(
            k_copwin(&p, 3, 100),
            Err(SolverError::BudgetExceeded { states: 20000, budget: 100 })
        ));
        assert!(matches!(k_copwin(&p, 0, DEFAULT_BUDGET), Err(SolverError::NoCops)));
        let (_, t) = k_copwin(&p, 1, DEFAULT_BUDGET).unwrap();
        let bad = DiscreteState {
            cops: vec![0, 1],
            robber: 2,
            turn: Turn::Cops,
        };
        assert!(matches!(t.cop_move(&bad), Err(SolverError::UnknownState(_))));
        let bad = DiscreteState {
            cops: vec![0],
            robber: 12,
            turn: Turn::Robber,
        };
        assert!(matches!(t.robber_move(&bad), Err(SolverError::UnknownState(_))));
    }

    #[test]
    fn captured_state_stays() {
        let (_, t) = k_copwin(&DiscreteGraph::path(4).unwrap(), 1, DEFAULT_BUDGET).unwrap();
        let s = DiscreteState {
            cops: vec![2],
            robber: 2,
            turn: Turn::Cops,
        };
        assert_eq!(t.cop_move(&s).unwrap(), vec![2]);
    }

    #[test]
    fn c4_robber_keeps_distance() {
        let (_, t) = k_copwin(&DiscreteGraph::cycle(4).unwrap(), 1, DEFAULT_BUDGET).unwrap();
        for c in 0..4 {
            for r in 0..4 {
                let s = DiscreteState {
                    cops: vec![c],
                    robber: r,
                    turn: Turn::Robber,
                };
                if t.is_cop_win(&s).unwrap() {
                    continue;
                }
                let next = t.robber_move(&s).unwrap();
                assert!(t.graph_distance(c, next) >= 1);
            }
        }
    }

    #[test]
    fn cop_move_alignment_with_unsorted_input() {
        let (_, t) = k_copwin(&DiscreteGraph::path(7).unwrap(), 2, DEFAULT_BUDGET).unwrap();
        let s = DiscreteState {
            cops: vec![6, 0],
            robber: 3,
            turn: Turn::Cops,
        };
        let m = t.cop_move(&s).unwrap();
        assert!(t.graph().closed_neighborhood(6).contains(&m[0]));
        assert!(t.graph().closed_neighborhood(0).contains(&m[1]));
    }

    #[test]
    fn table_file_round_trip() {
        let (_, t) = k_copwin(&DiscreteGraph::cycle(5).unwrap(), 2, DEFAULT_BUDGET).unwrap();
        let file = t.to_file();
        let json = serde_json::to_string(&file).unwrap();
        let back = StrategyTable::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.to_file(), file);
        let mut broken = file.clone();
        broken.remoteness.pop();
        assert!(StrategyTable::from_file(&broken).is_err());
        let mut tampered = file.clone();
        let i = tampered.remoteness.iter().position(|r| r.is_some_and(|r| r > 0)).unwrap();
        tampered.remoteness[i] = None;
        assert!(StrategyTable::from_file(&tampered).is_err());
        let mut flag = file;
        flag.cops_win = !flag.cops_win;
        assert!(StrategyTable::from_file(&flag).is_err());
    }
}
