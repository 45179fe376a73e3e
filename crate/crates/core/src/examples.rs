//! Bundled inputs with their known invariants.

use crate::task::{parse_task, TaskFile};

#[derive(Clone, Debug)]
pub struct ExampleEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub task: &'static str,
    /// Exact values every run must reproduce.
    pub expected: &'static [(&'static str, i64)],
    pub h: Option<&'static [i64]>,
}

impl ExampleEntry {
    pub fn task_file(&self) -> TaskFile {
        parse_task(self.task).expect("bundled task files parse")
    }

    pub fn expected(&self, name: &str) -> Option<i64> {
        self.expected.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

const EX_3_2: &str = "\
# dimension two, depth one; J = (x^2+y^2, z^2+t^2)
field GF(32003)
vars x, y, z, t
ideal P1 = x^2, z^2
ideal P2 = x - y, z + t
ideal I = intersect(P1, P2)
ideal J = x^2 + y^2, z^2 + t^2
seq a = x^2 + y^2, z^2 + t^2
filtration N = adic(J) mod I
task depth I
task verify upper-bound N seq=a
";

const EX_3_3: &str = "\
# k[x^5, xy^4, x^4y, y^5] presented on t1..t4; J = (t1, t4) is the image of (x^5, y^5)
field GF(32003)
vars t1, t2, t3, t4
ideal I = t2*t3 - t1*t4, t2^4 - t3*t4^3, t1*t2^3 - t3^2*t4^2, t1^2*t2^2 - t3^3*t4, t1^3*t2 - t3^4, t3^5 - t1^4*t4
ideal J = t1, t4
filtration N = adic(J) mod I
task depth I
task hilbert N route=both
task verify upper-bound N
task verify lower-bound N
";

const EX_3_6: &str = "\
# maximal ideal of k[x,y,z]/(x^2, xy)
field GF(32003)
vars x, y, z
ideal I = x^2, x*y
ideal m = x, y, z
filtration F = adic(m) mod I
task depth I
task hilbert F route=both
task verify lower-bound F
";

const EX_4_2: &str = "\
# dimension three, depth one, with a parameter ideal
field GF(32003)
vars x, y, z, u, v, w
ideal P1 = x + y, z - u, w
ideal P2 = z, u - v, y
ideal P3 = x, u, w
ideal I = intersect(P1, P2, P3)
ideal q = u - y, z + w, x - v
filtration N = adic(q) mod I
task depth I
task hilbert N route=both
task verify upper-bound N
";

pub const EXAMPLES: [ExampleEntry; 4] = [
    ExampleEntry {
        id: "3.2",
        description: "k[x,y,z,t]/((x^2,z^2) ∩ (x-y,z+t)) with the J-adic filtration of J = (x^2+y^2, z^2+t^2): \
                      ((x^2+y^2) : (z^2+t^2)) ∩ J = (x^2+y^2) although the ring is not Cohen-Macaulay",
        task: EX_3_2,
        expected: &[("d", 2), ("depth", 1), ("colon_equality", 1)],
        h: None,
    },
    ExampleEntry {
        id: "3.3",
        description: "the semigroup ring k[x^5, xy^4, x^4y, y^5] in its four-variable presentation, \
                      J-adic filtration for J = (t1, t4): e_2 = 0 and the upper bound is an equality",
        task: EX_3_3,
        expected: &[("d", 2), ("depth", 1), ("e2", 0), ("bound_sum", 0)],
        h: None,
    },
    ExampleEntry {
        id: "3.6",
        description: "maximal ideal of k[x,y,z]/(x^2, xy): Hilbert series (1 + t - t^2)/(1-t)^2, e_2 = -1",
        task: EX_3_6,
        expected: &[("d", 2), ("depth", 1), ("e2", -1)],
        h: Some(&[1, 1, -1]),
    },
    ExampleEntry {
        id: "4.2",
        description: "R/I for I = (x+y,z-u,w) ∩ (z,u-v,y) ∩ (x,u,w) with q = (u-y, z+w, x-v): \
                      depth one in dimension three, e_2 = 1 exceeds the bound 0",
        task: EX_4_2,
        expected: &[("d", 3), ("depth", 1), ("e2", 1), ("bound_sum", 0)],
        h: None,
    },
];

pub fn example(id: &str) -> Option<&'static ExampleEntry> {
    EXAMPLES.iter().find(|e| e.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_parse() {
        for e in &EXAMPLES {
            let t = e.task_file();
            assert!(!t.tasks.is_empty(), "{}", e.id);
            assert_eq!(parse_task(&t.to_canonical()).unwrap(), t);
        }
    }

    #[test]
    fn binomial_presentation() {
        let t = example("3.3").unwrap().task_file();
        assert_eq!(t.vars.len(), 4);
        let i = t.ideal("I").unwrap();
        assert_eq!(i.gens().len(), 6);
        assert!(i.gens().iter().all(|g| g.len() == 2 && g.is_homogeneous()));
        assert!(example("9.9").is_none());
    }
}
