//! Bucket queue for shortest paths with small integer distances.

pub(crate) struct Dial {
    buckets: Vec<Vec<u32>>,
    cur: usize,
}

impl Dial {
    /// A queue for distances in `0..=max`.
    pub fn new(max: usize) -> Self {
        Dial { buckets: vec![Vec::new(); max + 1], cur: 0 }
    }

    /// Ignores distances above the maximum.
    pub fn push(&mut self, item: u32, dist: usize) {
        debug_assert!(dist >= self.cur);
        if let Some(b) = self.buckets.get_mut(dist) {
            b.push(item);
        }
    }

    /// Some item with the smallest distance; stale entries are the caller's
    /// business.
    pub fn pop(&mut self) -> Option<(u32, usize)> {
        while self.cur < self.buckets.len() {
            if let Some(x) = self.buckets[self.cur].pop() {
                return Some((x, self.cur));
            }
            self.cur += 1;
        }
        None
    }
}
