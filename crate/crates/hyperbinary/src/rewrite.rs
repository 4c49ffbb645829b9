//! The string-rewriting system R = {02→10, 12→20} and its inverse,
//! specialized to canonical hyperbinary expansions.

use rand::Rng;

use crate::expansion::Expansion;

/// Arc colour of a single-step reduction: `Single` ('→') for steps of
/// type I (2ẏ → 10ẏ) and II (ẋ02ẏ → ẋ10ẏ), `Double` ('↠') for type III
/// (ẋ12ẏ → ẋ20ẏ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcColor {
    Single,
    Double,
}

impl ArcColor {
    /// Token used in DOT and machine-readable output.
    pub fn token(self) -> &'static str {
        match self {
            ArcColor::Single => "single",
            ArcColor::Double => "double",
        }
    }

    /// Arrow glyph used in human-readable output.
    pub fn arrow(self) -> &'static str {
        match self {
            ArcColor::Single => "→",
            ArcColor::Double => "↠",
        }
    }
}

/// One application of a rule of R. `position` is the index of the
/// rewritten 2-digit in the source word, with −1 for the virtual
/// leading-zero position of a type-I step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub source: Expansion,
    pub target: Expansion,
    pub color: ArcColor,
    pub position: isize,
}

/// All single-step reductions out of `e`, ordered left to right.
///
/// Each maximal block of 2's contributes exactly one step, rewriting the
/// first 2 of the block together with its left neighbour (a virtual 0
/// when the 2 is leading).
pub fn children(e: &Expansion) -> Vec<RewriteStep> {
    let d = e.digits();
    let mut steps = Vec::new();
    for i in 0..d.len() {
        if d[i] != 2 || (i > 0 && d[i - 1] == 2) {
            continue; // not the first 2 of a block
        }
        let (target, color, position) = if i == 0 {
            // type I: 2ẏ → 10ẏ
            let mut nd = Vec::with_capacity(d.len() + 1);
            nd.push(1);
            nd.push(0);
            nd.extend_from_slice(&d[1..]);
            (Expansion::from_canonical(nd), ArcColor::Single, -1)
        } else if d[i - 1] == 0 {
            // type II: ẋ02ẏ → ẋ10ẏ
            let mut nd = d.to_vec();
            nd[i - 1] = 1;
            nd[i] = 0;
            (Expansion::from_canonical(nd), ArcColor::Single, i as isize)
        } else {
            // type III: ẋ12ẏ → ẋ20ẏ
            let mut nd = d.to_vec();
            nd[i - 1] = 2;
            nd[i] = 0;
            (Expansion::from_canonical(nd), ArcColor::Double, i as isize)
        };
        steps.push(RewriteStep {
            source: e.clone(),
            target,
            color,
            position,
        });
    }
    steps
}

/// All single-step reductions into `e`, i.e. applications of
/// R⁻¹ = {10→02, 20→12}, ordered left to right.
///
/// Each maximal block of 0's contributes exactly one parent: the first 0
/// of the block is rewritten with its left neighbour (1 or 2 by
/// maximality). A parent gaining a leading 0 is re-canonicalized, which
/// inverts the type-I rule.
pub fn parents(e: &Expansion) -> Vec<RewriteStep> {
    let d = e.digits();
    let mut steps = Vec::new();
    for i in 1..d.len() {
        if d[i] != 0 || d[i - 1] == 0 {
            continue; // not the first 0 of a block
        }
        let (source, color, position) = if d[i - 1] == 1 {
            // inverse of 02→10; drops to type I when the 0 lands in front
            let mut nd = d.to_vec();
            nd[i - 1] = 0;
            nd[i] = 2;
            let position = if i == 1 { -1 } else { i as isize };
            (Expansion::new(&nd).unwrap(), ArcColor::Single, position)
        } else {
            // inverse of 12→20
            let mut nd = d.to_vec();
            nd[i - 1] = 1;
            nd[i] = 2;
            (Expansion::from_canonical(nd), ArcColor::Double, i as isize)
        };
        steps.push(RewriteStep {
            source,
            target: e.clone(),
            color,
            position,
        });
    }
    steps
}

/// No 2-digit: the word admits no R-step (the binary expansion).
pub fn is_forward_irreducible(e: &Expansion) -> bool {
    !e.has_two()
}

/// No 0-digit: the word admits no R⁻¹-step (the minimal expansion).
pub fn is_backward_irreducible(e: &Expansion) -> bool {
    !e.has_zero()
}

/// Which step to take when several are available.
#[derive(Debug, Clone, Copy)]
pub enum StepChoice {
    Leftmost,
    Rightmost,
}

fn reduce_forward(e: &Expansion, mut pick: impl FnMut(usize) -> usize) -> Expansion {
    let mut cur = e.clone();
    loop {
        let steps = children(&cur);
        if steps.is_empty() {
            return cur;
        }
        let i = pick(steps.len());
        cur = steps.into_iter().nth(i).unwrap().target;
    }
}

fn reduce_backward(e: &Expansion, mut pick: impl FnMut(usize) -> usize) -> Expansion {
    let mut cur = e.clone();
    loop {
        let steps = parents(&cur);
        if steps.is_empty() {
            return cur;
        }
        let i = pick(steps.len());
        cur = steps.into_iter().nth(i).unwrap().source;
    }
}

/// Applies forward steps until irreducible; each step strictly decreases
/// the weight, so this terminates. The result is the binary expansion of
/// value(e) no matter which steps are chosen.
pub fn reduce_to_sink(e: &Expansion, choice: StepChoice) -> Expansion {
    match choice {
        StepChoice::Leftmost => reduce_forward(e, |_| 0),
        StepChoice::Rightmost => reduce_forward(e, |len| len - 1),
    }
}

/// Applies backward steps until irreducible; ends at the minimal
/// expansion of value(e).
pub fn reduce_to_root(e: &Expansion, choice: StepChoice) -> Expansion {
    match choice {
        StepChoice::Leftmost => reduce_backward(e, |_| 0),
        StepChoice::Rightmost => reduce_backward(e, |len| len - 1),
    }
}

/// Forward reduction choosing a random step each time.
pub fn reduce_to_sink_random<R: Rng>(e: &Expansion, rng: &mut R) -> Expansion {
    reduce_forward(e, |len| rng.gen_range(0..len))
}

/// Backward reduction choosing a random step each time.
pub fn reduce_to_root_random<R: Rng>(e: &Expansion, rng: &mut R) -> Expansion {
    reduce_backward(e, |len| rng.gen_range(0..len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{binary_expansion, enumerate_expansions, minimal_expansion};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn exp(s: &str) -> Expansion {
        s.parse().unwrap()
    }

    #[test]
    fn children_examples() {
        let steps = children(&exp("202"));
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].target, exp("1002"));
        assert_eq!(steps[0].color, ArcColor::Single);
        assert_eq!(steps[0].position, -1);
        assert_eq!(steps[1].target, exp("210"));
        assert_eq!(steps[1].color, ArcColor::Single);
        assert_eq!(steps[1].position, 2);

        let steps = children(&exp("122"));
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].target, exp("202"));
        assert_eq!(steps[0].color, ArcColor::Double);

        assert!(children(&exp("1010")).is_empty());
    }

    #[test]
    fn parents_examples() {
        let sources: Vec<Expansion> =
            parents(&exp("1010")).into_iter().map(|s| s.source).collect();
        assert_eq!(sources, vec![exp("210"), exp("1002")]);

        assert!(parents(&exp("122")).is_empty());

        let sources: Vec<Expansion> =
            parents(&exp("1002")).into_iter().map(|s| s.source).collect();
        assert_eq!(sources, vec![exp("202")]);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_forward_irreducible(&exp("1010")));
        assert!(!is_backward_irreducible(&exp("1010")));
        assert!(is_backward_irreducible(&exp("122")));
        assert!(!is_forward_irreducible(&exp("122")));
        assert!(!is_forward_irreducible(&exp("202")));
        assert!(!is_backward_irreducible(&exp("202")));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_to_sink(&exp("202"), StepChoice::Leftmost), exp("1010"));
        assert_eq!(reduce_to_root(&exp("1010"), StepChoice::Leftmost), exp("122"));
        assert_eq!(reduce_to_sink(&exp("111"), StepChoice::Rightmost), exp("111"));
    }

    proptest! {
        #[test]
        fn step_laws(n in 1u64..1500) {
            for e in enumerate_expansions(n).unwrap() {
                let steps = children(&e);
                prop_assert_eq!(steps.len(), e.blocks_of_twos());
                for s in &steps {
                    prop_assert_eq!(s.target.value(), s.source.value());
                    prop_assert_eq!(s.target.weight(), s.source.weight() - 1);
                    prop_assert!(s.source < s.target);
                    // duality with colour agreement
                    prop_assert!(parents(&s.target)
                        .iter()
                        .any(|p| p.source == e && p.color == s.color));
                }
                for p in parents(&e) {
                    prop_assert!(children(&p.source)
                        .iter()
                        .any(|c| c.target == e && c.color == p.color));
                }
            }
        }

        #[test]
        fn confluence(n in 1u64..800, seed in 0u64..16) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sink = binary_expansion(n);
            let root = minimal_expansion(n);
            for e in enumerate_expansions(n).unwrap() {
                prop_assert_eq!(&reduce_to_sink(&e, StepChoice::Leftmost), &sink);
                prop_assert_eq!(&reduce_to_sink(&e, StepChoice::Rightmost), &sink);
                prop_assert_eq!(&reduce_to_root(&e, StepChoice::Leftmost), &root);
                prop_assert_eq!(&reduce_to_root(&e, StepChoice::Rightmost), &root);
                prop_assert_eq!(&reduce_to_sink_random(&e, &mut rng), &sink);
                prop_assert_eq!(&reduce_to_root_random(&e, &mut rng), &root);
            }
        }
    }
}
