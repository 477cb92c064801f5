/// All vectors of `parts` non-negative integers summing to `total`, in
/// lexicographic order (`(0,..,0,total)` first, `(total,0,..,0)` last).
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Vec<u64>,
    done: bool,
}

impl Compositions {
    pub fn new(parts: usize, total: u64) -> Self {
        if parts == 0 {
            return Compositions { current: vec![], done: total != 0 };
        }
        let mut current = vec![0; parts];
        current[parts - 1] = total;
        Compositions { current, done: false }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let n = self.current.len();
        // Rightmost position before the last whose suffix holds chips: bump it
        // and move the remaining suffix mass to the last slot.
        let mut suffix = 0;
        let mut pivot = None;
        for i in (0..n.saturating_sub(1)).rev() {
            suffix += self.current[i + 1];
            if suffix > 0 {
                pivot = Some(i);
                break;
            }
        }
        match pivot {
            None => self.done = true,
            Some(i) => {
                self.current[i] += 1;
                self.current[i + 1..].iter_mut().for_each(|c| *c = 0);
                self.current[n - 1] = suffix - 1;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_and_order() {
        for parts in 1..5usize {
            for total in 0..6u64 {
                let all: Vec<_> = Compositions::new(parts, total).collect();
                assert_eq!(all.len() as u64, binom(total + parts as u64 - 1, parts as u64 - 1));
                assert!(all.iter().all(|c| c.iter().sum::<u64>() == total));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(Compositions::new(2, 2).collect::<Vec<_>>(), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(Compositions::new(0, 0).count(), 1);
        assert_eq!(Compositions::new(0, 3).count(), 0);
    }
}
