//! Seeded random presentations and cobordisms for the harnesses.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::presentation::{Move, MoveScript, Presentation};

use super::Cobordism;

/// Size limits for generated presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub max_surgery: usize,
    pub max_genus: usize,
    pub max_lk: i64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_surgery: 2,
            max_genus: 1,
            max_lk: 3,
        }
    }
}

/// A single-component presentation with handlebodies of the given genera,
/// up to `max_surgery` surgery circles and all linking data drawn from
/// [−max_lk, max_lk].
pub fn random_presentation_with_genera<R: Rng>(rng: &mut R, genera: &[usize], cfg: &GenConfig) -> Presentation {
    let mut p = Presentation::sphere();
    for (h, &g) in genera.iter().enumerate() {
        p.add_handlebody(&format!("H{}", h + 1), g).expect("fresh name");
    }
    let n = rng.gen_range(0..=cfg.max_surgery);
    for i in 0..n {
        p.add_surgery(&format!("K{}", i + 1), 0).expect("fresh name");
    }
    let total = p.circles().len();
    for i in 0..total {
        for j in i..total {
            // sparse-ish: about a third of the off-diagonal entries vanish
            let v = if i != j && rng.gen_range(0..3) == 0 {
                0
            } else {
                rng.gen_range(-cfg.max_lk..=cfg.max_lk)
            };
            p.set_linking(i, j, v).expect("indices in range");
        }
    }
    p
}

pub fn random_genera<R: Rng>(rng: &mut R, count: usize, max_genus: usize) -> Vec<usize> {
    (0..count).map(|_| rng.gen_range(0..=max_genus)).collect()
}

/// A random single-component presentation with `handlebodies` in the given range.
pub fn random_presentation<R: Rng>(
    rng: &mut R,
    handlebodies: std::ops::RangeInclusive<usize>,
    cfg: &GenConfig,
) -> Presentation {
    let h = rng.gen_range(handlebodies);
    let genera = random_genera(rng, h, cfg.max_genus);
    random_presentation_with_genera(rng, &genera, cfg)
}

/// A random cobordism with the given source genera and a random target of
/// up to `max_target` handlebodies; the boundary order is shuffled.
pub fn random_cobordism<R: Rng>(rng: &mut R, source: &[usize], max_target: usize, cfg: &GenConfig) -> Cobordism {
    let k = rng.gen_range(0..=max_target);
    let target = random_genera(rng, k, cfg.max_genus);
    random_cobordism_between(rng, source, &target, cfg)
}

pub fn random_cobordism_between<R: Rng>(rng: &mut R, source: &[usize], target: &[usize], cfg: &GenConfig) -> Cobordism {
    let total = source.len() + target.len();
    let mut slots: Vec<usize> = (0..total).collect();
    slots.shuffle(rng);
    let mut genera = vec![0; total];
    for (i, &g) in source.iter().chain(target).enumerate() {
        genera[slots[i]] = g;
    }
    let p = random_presentation_with_genera(rng, &genera, cfg);
    let (s, t) = slots.split_at(source.len());
    Cobordism::new(p, s.to_vec(), t.to_vec()).expect("slots partition the handlebodies")
}

/// `steps` random handle slides, each over a surgery circle; `None` when
/// the presentation has no surgery circle or no other circle to slide.
pub fn random_slides<R: Rng>(rng: &mut R, p: &Presentation, steps: usize) -> Option<MoveScript> {
    let surgery: Vec<usize> = p.surgery_indices().collect();
    let n = p.circles().len();
    if surgery.is_empty() || n < 2 {
        return None;
    }
    let moves = (0..steps)
        .map(|_| {
            let over = *surgery.choose(rng).unwrap();
            let target = loop {
                let x = rng.gen_range(0..n);
                if x != over {
                    break x;
                }
            };
            Move::Slide {
                target: p.circles()[target].name().to_string(),
                over: p.circles()[over].name().to_string(),
                sign: if rng.gen_bool(0.5) { 1 } else { -1 },
            }
        })
        .collect();
    Some(MoveScript { moves })
}
