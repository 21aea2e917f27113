use std::ops::Range;

use crate::wordcore::Letter;

const IMAGINARY: u32 = 0;
const EMPTY: u32 = 1;

#[derive(Clone, Debug)]
struct Node {
    len: i64,
    link: u32,
    /// End position of the first occurrence (inclusive).
    end: usize,
    next: Vec<(Letter, u32)>,
}

impl Node {
    fn child(&self, c: Letter) -> Option<u32> {
        self.next.iter().find(|&&(d, _)| d == c).map(|&(_, v)| v)
    }
}

/// Palindromic tree: one node per distinct palindromic factor, plus the two
/// roots of lengths -1 and 0.
#[derive(Clone, Debug)]
pub struct PalindromicIndex {
    nodes: Vec<Node>,
    counts: Vec<usize>,
}

impl PalindromicIndex {
    pub fn build(letters: &[Letter]) -> Self {
        let mut nodes = vec![
            Node { len: -1, link: IMAGINARY, end: 0, next: Vec::new() },
            Node { len: 0, link: IMAGINARY, end: 0, next: Vec::new() },
        ];
        let mut counts = vec![1usize];
        let mut last = EMPTY;
        for (i, &c) in letters.iter().enumerate() {
            let fits = |v: u32, nodes: &[Node]| {
                let j = i as i64 - nodes[v as usize].len - 1;
                j >= 0 && letters[j as usize] == c
            };
            let mut cur = last;
            while !fits(cur, &nodes) {
                cur = nodes[cur as usize].link;
            }
            if let Some(v) = nodes[cur as usize].child(c) {
                last = v;
                continue;
            }
            let len = nodes[cur as usize].len + 2;
            let link = if len == 1 {
                EMPTY
            } else {
                let mut s = nodes[cur as usize].link;
                while !fits(s, &nodes) {
                    s = nodes[s as usize].link;
                }
                nodes[s as usize].child(c).expect("suffix palindrome already indexed")
            };
            let id = nodes.len() as u32;
            nodes.push(Node { len, link, end: i, next: Vec::new() });
            nodes[cur as usize].next.push((c, id));
            let len = len as usize;
            if counts.len() <= len {
                counts.resize(len + 1, 0);
            }
            counts[len] += 1;
            last = id;
        }
        PalindromicIndex { nodes, counts }
    }

    /// Number of distinct non-empty palindromic factors.
    pub fn node_count(&self) -> usize {
        self.nodes.len() - 2
    }

    /// Node ids of the non-empty palindromes, in order of first completion.
    pub fn palindromes(&self) -> Range<usize> {
        2..self.nodes.len()
    }

    pub fn len(&self, node: usize) -> usize {
        self.nodes[node].len.max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    /// Node of the longest proper palindromic suffix (1 = the empty word).
    pub fn suffix_link(&self, node: usize) -> usize {
        self.nodes[node].link as usize
    }

    /// Position range of the first occurrence of `node`.
    pub fn occurrence(&self, node: usize) -> Range<usize> {
        let n = &self.nodes[node];
        n.end + 1 - n.len.max(0) as usize..n.end + 1
    }

    /// Distinct palindromes of length `n`; the empty word counts once.
    pub fn count(&self, n: usize) -> usize {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn counts(&self, n_max: usize) -> Vec<usize> {
        (0..=n_max).map(|n| self.count(n)).collect()
    }
}
