//! Frequent premise sets and association rules over fact dependencies.
//!
//! Each fact yields a transaction holding the entities it directly depends
//! on. [`frequent_itemsets`] mines them with FP-growth; rules derived from the
//! itemsets drive [`suggest_premises`].

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{DependencyGraph, EntityKind};

/// Item kinds used when none are given.
pub const DEFAULT_ITEM_KINDS: [EntityKind; 2] = [EntityKind::Fact, EntityKind::Constant];

/// Rules are derived from itemsets of at most this many items.
pub const MAX_RULE_ITEMSET: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MiningError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transaction {
    pub owner: String,
    pub items: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrequentItemset {
    /// Sorted ascending.
    pub items: Vec<String>,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssociationRule {
    pub antecedent: Vec<String>,
    pub consequent: Vec<String>,
    pub support: usize,
    pub confidence: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub transactions: Vec<Transaction>,
    /// Facts without any qualifying dependency.
    pub skipped: usize,
}

/// One transaction per fact: the ids of its direct dependencies whose kind is
/// in `item_kinds`.
pub fn extract_transactions(graph: &DependencyGraph, item_kinds: &[EntityKind]) -> Extraction {
    let mut transactions = Vec::new();
    let mut skipped = 0;
    for (ix, e) in graph.entities().iter().enumerate() {
        if e.kind != EntityKind::Fact {
            continue;
        }
        let items: BTreeSet<String> = graph
            .out_edges(ix)
            .map(|(d, _)| graph.entity(d))
            .filter(|d| item_kinds.contains(&d.kind))
            .map(|d| d.id.clone())
            .collect();
        if items.is_empty() {
            skipped += 1;
        } else {
            transactions.push(Transaction {
                owner: e.id.clone(),
                items,
            });
        }
    }
    Extraction {
        transactions,
        skipped,
    }
}

/// Canonical output order: by size, then lexicographically by items.
fn itemset_order(a: &FrequentItemset, b: &FrequentItemset) -> Ordering {
    a.items
        .len()
        .cmp(&b.items.len())
        .then_with(|| a.items.cmp(&b.items))
}

/// Every itemset contained in at least `min_support` transactions, with its
/// exact support.
pub fn frequent_itemsets(
    transactions: &[Transaction],
    min_support: usize,
) -> Result<Vec<FrequentItemset>, MiningError> {
    if min_support < 1 {
        return Err(MiningError::InvalidParameter(
            "min_support must be at least 1".into(),
        ));
    }
    let mut freq: HashMap<&str, usize> = HashMap::new();
    for t in transactions {
        for item in &t.items {
            *freq.entry(item.as_str()).or_insert(0) += 1;
        }
    }
    // Rank 0 is the most frequent item; ties broken by id.
    let mut ranked: Vec<(&str, usize)> = freq
        .into_iter()
        .filter(|&(_, c)| c >= min_support)
        .collect();
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let rank_of: HashMap<&str, u32> = ranked
        .iter()
        .enumerate()
        .map(|(r, (item, _))| (*item, r as u32))
        .collect();

    let mut tree = FpTree::new(ranked.len());
    let mut path = Vec::new();
    for t in transactions {
        path.clear();
        path.extend(
            t.items
                .iter()
                .filter_map(|i| rank_of.get(i.as_str()).copied()),
        );
        path.sort_unstable();
        tree.insert(&path, 1);
    }

    let mut found: Vec<(Vec<u32>, usize)> = Vec::new();
    tree.mine(min_support, &mut Vec::new(), &mut found);

    let mut out: Vec<FrequentItemset> = found
        .into_iter()
        .map(|(ranks, support)| {
            let mut items: Vec<String> = ranks
                .iter()
                .map(|&r| ranked[r as usize].0.to_owned())
                .collect();
            items.sort();
            FrequentItemset { items, support }
        })
        .collect();
    out.sort_by(itemset_order);
    Ok(out)
}

struct FpNode {
    item: u32,
    count: usize,
    parent: u32,
    children: Vec<(u32, u32)>,
}

/// Prefix tree of rank-sorted transactions. Node 0 is the root.
struct FpTree {
    nodes: Vec<FpNode>,
    /// Nodes carrying each item rank.
    header: Vec<Vec<u32>>,
}

impl FpTree {
    fn new(items: usize) -> Self {
        FpTree {
            nodes: vec![FpNode {
                item: u32::MAX,
                count: 0,
                parent: u32::MAX,
                children: Vec::new(),
            }],
            header: vec![Vec::new(); items],
        }
    }

    fn insert(&mut self, path: &[u32], count: usize) {
        let mut cur = 0u32;
        for &item in path {
            let found = self.nodes[cur as usize]
                .children
                .iter()
                .find(|c| c.0 == item)
                .map(|c| c.1);
            cur = match found {
                Some(child) => child,
                None => {
                    let id = self.nodes.len() as u32;
                    self.nodes.push(FpNode {
                        item,
                        count: 0,
                        parent: cur,
                        children: Vec::new(),
                    });
                    self.nodes[cur as usize].children.push((item, id));
                    self.header[item as usize].push(id);
                    id
                }
            };
            self.nodes[cur as usize].count += count;
        }
    }

    fn mine(&self, min_support: usize, suffix: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, usize)>) {
        // least frequent first, so conditional bases only hold more frequent items
        for item in (0..self.header.len()).rev() {
            let support: usize = self.header[item]
                .iter()
                .map(|&n| self.nodes[n as usize].count)
                .sum();
            if support < min_support {
                continue;
            }
            suffix.push(item as u32);
            out.push((suffix.clone(), support));

            let mut base: Vec<(Vec<u32>, usize)> = Vec::new();
            let mut local = vec![0usize; item];
            for &n in &self.header[item] {
                let node = &self.nodes[n as usize];
                let mut prefix = Vec::new();
                let mut p = node.parent;
                while p != 0 {
                    let anc = &self.nodes[p as usize];
                    prefix.push(anc.item);
                    local[anc.item as usize] += node.count;
                    p = anc.parent;
                }
                if !prefix.is_empty() {
                    prefix.reverse();
                    base.push((prefix, node.count));
                }
            }
            if local.iter().any(|&c| c >= min_support) {
                let mut cond = FpTree::new(item);
                for (prefix, count) in &base {
                    let kept: Vec<u32> = prefix
                        .iter()
                        .copied()
                        .filter(|&i| local[i as usize] >= min_support)
                        .collect();
                    cond.insert(&kept, *count);
                }
                cond.mine(min_support, suffix, out);
            }
            suffix.pop();
        }
    }
}

fn count_support(transactions: &[Transaction], items: &[String]) -> usize {
    transactions
        .iter()
        .filter(|t| items.iter().all(|i| t.items.contains(i)))
        .count()
}

/// All rules `X → Y` with `X ∪ Y` among `itemsets` and confidence at least
/// `min_confidence`, sorted by descending confidence, then descending
/// support, then antecedent and consequent.
pub fn association_rules(
    itemsets: &[FrequentItemset],
    transactions: &[Transaction],
    min_confidence: f64,
) -> Result<Vec<AssociationRule>, MiningError> {
    if !(min_confidence > 0.0 && min_confidence <= 1.0) {
        return Err(MiningError::InvalidParameter(format!(
            "min_confidence must lie in (0, 1], got {min_confidence}"
        )));
    }
    let support_of: HashMap<&[String], usize> = itemsets
        .iter()
        .map(|s| (s.items.as_slice(), s.support))
        .collect();

    let mut rules = Vec::new();
    for set in itemsets.iter().filter(|s| s.items.len() >= 2) {
        let k = set.items.len();
        if k > MAX_RULE_ITEMSET {
            return Err(MiningError::InvalidParameter(format!(
                "itemset of {k} items exceeds the rule limit of {MAX_RULE_ITEMSET}"
            )));
        }
        for mask in 1..(1u32 << k) - 1 {
            let (antecedent, consequent): (Vec<_>, Vec<_>) = set
                .items
                .iter()
                .enumerate()
                .partition(|(i, _)| mask & (1 << i) != 0);
            let antecedent: Vec<String> = antecedent.into_iter().map(|(_, s)| s.clone()).collect();
            let consequent: Vec<String> = consequent.into_iter().map(|(_, s)| s.clone()).collect();
            let base = support_of
                .get(antecedent.as_slice())
                .copied()
                .unwrap_or_else(|| count_support(transactions, &antecedent));
            let confidence = set.support as f64 / base as f64;
            if confidence >= min_confidence {
                rules.push(AssociationRule {
                    antecedent,
                    consequent,
                    support: set.support,
                    confidence,
                });
            }
        }
    }
    rules.sort_by(|a, b| {
        b.confidence
            .total_cmp(&a.confidence)
            .then_with(|| b.support.cmp(&a.support))
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
    Ok(rules)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PremiseSuggestion {
    pub item: String,
    pub confidence: f64,
    pub support: usize,
}

/// Ranks the consequent items of every rule whose antecedent is contained in
/// `partial`. An item scores the best `(confidence, support)` among its rules;
/// at most `k` items not already in `partial` are returned.
pub fn suggest_premises(
    rules: &[AssociationRule],
    partial: &BTreeSet<String>,
    k: usize,
) -> Vec<PremiseSuggestion> {
    let mut best: HashMap<&str, (f64, usize)> = HashMap::new();
    for rule in rules {
        if !rule.antecedent.iter().all(|a| partial.contains(a)) {
            continue;
        }
        for item in rule.consequent.iter().filter(|c| !partial.contains(*c)) {
            let score = (rule.confidence, rule.support);
            best.entry(item.as_str())
                .and_modify(|s| {
                    if score.0 > s.0 || (score.0 == s.0 && score.1 > s.1) {
                        *s = score;
                    }
                })
                .or_insert(score);
        }
    }
    let mut ranked: Vec<PremiseSuggestion> = best
        .into_iter()
        .map(|(item, (confidence, support))| PremiseSuggestion {
            item: item.to_owned(),
            confidence,
            support,
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.confidence
            .total_cmp(&a.confidence)
            .then_with(|| b.support.cmp(&a.support))
            .then_with(|| a.item.cmp(&b.item))
    });
    ranked.truncate(k);
    ranked
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{DepEdge, EdgeKind, Entity, GraphBuilder};

    pub(crate) fn db(rows: &[&[&str]]) -> Vec<Transaction> {
        rows.iter()
            .enumerate()
            .map(|(i, r)| Transaction {
                owner: format!("t{i}"),
                items: r.iter().map(|s| s.to_string()).collect(),
            })
            .collect()
    }

    fn set(items: &[&str], support: usize) -> FrequentItemset {
        FrequentItemset {
            items: items.iter().map(|s| s.to_string()).collect(),
            support,
        }
    }

    fn strings(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn hand_enumerated_itemsets() {
        let t = db(&[&["A", "B"], &["A", "B", "C"], &["A", "C"], &["B"]]);
        let got = frequent_itemsets(&t, 2).unwrap();
        assert_eq!(
            got,
            vec![
                set(&["A"], 3),
                set(&["B"], 3),
                set(&["C"], 2),
                set(&["A", "B"], 2),
                set(&["A", "C"], 2),
            ]
        );
        assert!(frequent_itemsets(&t, 5).unwrap().is_empty());
        assert!(frequent_itemsets(&t, 0).is_err());
    }

    #[test]
    fn rules_from_hand_db() {
        let t = db(&[&["A", "B"], &["A", "B", "C"], &["A", "C"], &["B"]]);
        let sets = frequent_itemsets(&t, 2).unwrap();
        let rules = association_rules(&sets, &t, 0.6).unwrap();
        let a_to_b = rules
            .iter()
            .find(|r| r.antecedent == strings(&["A"]) && r.consequent == strings(&["B"]))
            .unwrap();
        assert_eq!(a_to_b.confidence, 2.0 / 3.0);
        assert_eq!(a_to_b.support, 2);
        assert!(association_rules(&sets, &t, 0.7)
            .unwrap()
            .iter()
            .all(|r| r.antecedent != strings(&["A"]) || r.consequent != strings(&["B"])));

        let certain = association_rules(&sets, &t, 1.0).unwrap();
        assert_eq!(
            certain,
            vec![AssociationRule {
                antecedent: strings(&["C"]),
                consequent: strings(&["A"]),
                support: 2,
                confidence: 1.0,
            }]
        );
        assert!(association_rules(&sets, &t, 0.0).is_err());
    }

    fn rule(a: &[&str], c: &[&str], support: usize, confidence: f64) -> AssociationRule {
        AssociationRule {
            antecedent: strings(a),
            consequent: strings(c),
            support,
            confidence,
        }
    }

    #[test]
    fn premise_suggestions() {
        let rules = vec![rule(&["A"], &["B"], 4, 0.9)];
        let q: BTreeSet<String> = ["A".to_string()].into();
        let s = suggest_premises(&rules, &q, 3);
        assert_eq!(s.iter().map(|s| s.item.as_str()).collect::<Vec<_>>(), ["B"]);
        let q: BTreeSet<String> = ["B".to_string()].into();
        assert!(suggest_premises(&rules, &q, 3).is_empty());
    }

    #[test]
    fn premise_ranking_uses_best_rule_per_item() {
        // Hand scoring with query {A, B}:
        //   C: max(0.8 via A, 0.8 via A,B with support 5) -> (0.8, 5)
        //   D: 0.8 via B, support 3                      -> (0.8, 3)
        //   E: 0.95 but needs X                           -> excluded
        //   B: already known                              -> excluded
        //   F: 0.5 via A                                  -> (0.5, 9)
        let rules = vec![
            rule(&["A"], &["C"], 2, 0.8),
            rule(&["A", "B"], &["C"], 5, 0.8),
            rule(&["B"], &["D"], 3, 0.8),
            rule(&["X"], &["E"], 7, 0.95),
            rule(&["A"], &["B", "F"], 9, 0.5),
        ];
        let q: BTreeSet<String> = ["A".to_string(), "B".to_string()].into();
        let got: Vec<(String, f64, usize)> = suggest_premises(&rules, &q, 10)
            .into_iter()
            .map(|s| (s.item, s.confidence, s.support))
            .collect();
        assert_eq!(
            got,
            vec![
                ("C".into(), 0.8, 5),
                ("D".into(), 0.8, 3),
                ("F".into(), 0.5, 9)
            ]
        );
        assert_eq!(suggest_premises(&rules, &q, 1).len(), 1);
    }

    #[test]
    fn transactions_from_graph() {
        let mut b = GraphBuilder::new();
        b.add_entity(Entity::new("f1", EntityKind::Fact, "f1"))
            .unwrap();
        b.add_entity(Entity::new("f2", EntityKind::Fact, "f2"))
            .unwrap();
        b.add_entity(Entity::new("c1", EntityKind::Constant, "c1"))
            .unwrap();
        b.add_edge(DepEdge::new("f1", "c1", EdgeKind::Uses))
            .unwrap();
        b.add_edge(DepEdge::new("f1", "f2", EdgeKind::Uses))
            .unwrap();
        let g = b.seal().unwrap();

        let x = extract_transactions(&g, &DEFAULT_ITEM_KINDS);
        assert_eq!(x.transactions.len(), 1);
        assert_eq!(x.transactions[0].owner, "f1");
        assert_eq!(
            x.transactions[0].items,
            ["c1".to_string(), "f2".to_string()].into()
        );
        assert_eq!(x.skipped, 1);

        let x = extract_transactions(&g, &[EntityKind::Constant]);
        assert_eq!(x.transactions[0].items, ["c1".to_string()].into());
    }
}
