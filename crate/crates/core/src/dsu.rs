/// Disjoint-set forest with union by size and no path compression, so that
/// every union can be undone in LIFO order.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    // (absorbed root, surviving root) per successful union; None for no-ops
    history: Vec<Option<(usize, usize)>>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Returns false when `a` and `b` were already joined. Always pushes a
    /// history entry, so each call is matched by exactly one `undo`.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(Some((rb, ra)));
        true
    }

    pub fn undo(&mut self) {
        if let Some(Some((child, root))) = self.history.pop() {
            self.parent[child] = child;
            self.size[root] -= self.size[child];
        }
    }

    pub fn component_size(&self, x: usize) -> usize {
        self.size[self.find(x)]
    }
}
