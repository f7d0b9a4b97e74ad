//! Game rules checked against an independent step-by-step reference
//! simulation and a brute-force interval overlap oracle.

use fingersteer_core::filter::{CommandEvent, Direction};
use fingersteer_core::game::{GameConfig, GameState, Obstacle, RunStatus};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Written straight from the rules with its own data layout: obstacles as
/// (id, lane, top, counted) tuples, status as a countdown option.
struct Reference {
    lanes: u32,
    car: u32,
    obstacles: Vec<(u64, u32, f64, bool)>,
    score: u32,
    best: u32,
    run_tick: u64,
    next_id: u64,
    countdown: Option<u32>,
    rng: ChaCha8Rng,
}

impl Reference {
    fn new(c: &GameConfig) -> Self {
        Reference {
            lanes: c.lanes,
            car: c.lanes / 2,
            obstacles: vec![],
            score: 0,
            best: 0,
            run_tick: 0,
            next_id: 0,
            countdown: None,
            rng: ChaCha8Rng::seed_from_u64(c.rng_seed),
        }
    }

    fn step(&mut self, c: &GameConfig) {
        if let Some(k) = self.countdown {
            if k == 0 || k == 1 {
                self.car = self.lanes / 2;
                self.obstacles.clear();
                self.score = 0;
                self.run_tick = 0;
                self.next_id = 0;
                self.countdown = None;
            } else {
                self.countdown = Some(k - 1);
                self.run_tick += 1;
            }
            return;
        }
        let mut factor = 1.0f64;
        for _ in 0..self.score / 10 {
            factor *= c.speed_growth;
        }
        let v = c.base_speed * if factor > 3.0 { 3.0 } else { factor };
        for o in self.obstacles.iter_mut() {
            o.2 += v;
        }
        self.run_tick += 1;
        let hit = self.obstacles.iter().any(|o| {
            let lo = o.2.max(c.car_y);
            let hi = (o.2 + c.obstacle_height).min(c.car_y + c.car_height);
            o.1 == self.car && hi - lo > 0.0
        });
        if hit {
            self.best = self.best.max(self.score);
            self.countdown = Some(c.auto_restart_delay_ticks);
            return;
        }
        for o in self.obstacles.iter_mut() {
            if !o.3 && o.2 > c.car_y + c.car_height {
                o.3 = true;
                self.score += 1;
            }
        }
        self.best = self.best.max(self.score);
        self.obstacles.retain(|o| o.2 <= 1.0);
        if self.run_tick.is_multiple_of(u64::from(c.spawn_period_ticks)) {
            let lane = self.rng.random_range(0..self.lanes);
            self.obstacles.push((self.next_id, lane, -c.obstacle_height, false));
            self.next_id += 1;
        }
    }

    fn press(&mut self, d: Direction) {
        if self.countdown.is_some() {
            return;
        }
        match d {
            Direction::Left if self.car > 0 => self.car -= 1,
            Direction::Right if self.car + 1 < self.lanes => self.car += 1,
            _ => {}
        }
    }
}

fn same(g: &GameState, r: &Reference) -> bool {
    let status_ok = match (g.status, r.countdown) {
        (RunStatus::Running, None) => true,
        (RunStatus::Crashed { ticks_remaining }, Some(k)) => ticks_remaining == k,
        _ => false,
    };
    status_ok
        && g.car_lane == r.car
        && g.score == r.score
        && g.best_score == r.best
        && g.tick == r.run_tick
        && g.obstacles.len() == r.obstacles.len()
        && g.obstacles
            .iter()
            .zip(&r.obstacles)
            .all(|(a, b)| a.id == b.0 && a.lane == b.1 && a.y == b.2 && a.passed == b.3)
}

// Frozen from the reference simulation: lanes=3, seed=42, no commands.
const SEED42_FINAL_SCORE: u32 = 3;
const SEED42_FINAL_BEST: u32 = 5;
const SEED42_FINAL_RUNNING: bool = true;

#[test]
fn seeded_run_matches_reference() {
    let c = GameConfig { lanes: 3, rng_seed: 42, ..Default::default() };
    let mut g = GameState::new(&c).unwrap();
    let mut r = Reference::new(&c);
    for t in 0..2000 {
        g.tick(&c);
        r.step(&c);
        assert!(same(&g, &r), "diverged at tick {t}: {g:?}");
    }
    println!("seed 42 after 2000 ticks: score {} best {} status {:?}", r.score, r.best, r.countdown);
    assert_eq!(g.score, SEED42_FINAL_SCORE);
    assert_eq!(g.best_score, SEED42_FINAL_BEST);
    assert_eq!(g.status.is_running(), SEED42_FINAL_RUNNING);
}

#[test]
fn scripted_commands_match_reference() {
    let c = GameConfig { lanes: 5, rng_seed: 3, spawn_period_ticks: 25, ..Default::default() };
    let mut g = GameState::new(&c).unwrap();
    let mut r = Reference::new(&c);
    let mut crashes = 0;
    for t in 0..5000u64 {
        if t % 37 == 0 || t % 53 == 0 {
            let d = if (t / 37) % 3 == 0 { Direction::Right } else { Direction::Left };
            g.apply_command(&CommandEvent::press(d, t), &c);
            r.press(d);
        }
        let was_running = g.status.is_running();
        g.tick(&c);
        r.step(&c);
        if was_running && !g.status.is_running() {
            crashes += 1;
        }
        assert!(same(&g, &r), "diverged at tick {t}");
    }
    assert!(crashes > 0, "script should exercise the restart path");
}

/// Positive-overlap test written as pairwise interval intersection.
fn overlap_oracle(g: &GameState, c: &GameConfig) -> bool {
    let car = (c.car_y, c.car_y + c.car_height);
    let mut hit = false;
    for o in &g.obstacles {
        if o.lane != g.car_lane {
            continue;
        }
        let ob = (o.y, o.y + c.obstacle_height);
        let lo = if ob.0 > car.0 { ob.0 } else { car.0 };
        let hi = if ob.1 < car.1 { ob.1 } else { car.1 };
        if hi - lo > 0.0 {
            hit = true;
        }
    }
    hit
}

#[test]
fn collision_matches_oracle_on_random_states() {
    let c = GameConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let mut g = GameState::new(&c).unwrap();
    let mut positives = 0;
    let mut touching = 0;
    for _ in 0..1000 {
        g.car_lane = rng.random_range(0..c.lanes);
        g.obstacles = (0..rng.random_range(0..6u64))
            .map(|id| {
                // mix of free positions and exact edge contacts
                let y = match rng.random_range(0..4) {
                    0 => c.car_y - c.obstacle_height,
                    1 => c.car_y + c.car_height,
                    _ => rng.random_range(-0.2..1.1),
                };
                Obstacle { id, lane: rng.random_range(0..c.lanes), y, passed: false }
            })
            .collect();
        touching +=
            g.obstacles.iter().filter(|o| o.y == c.car_y - c.obstacle_height || o.y == c.car_y + c.car_height).count();
        let want = overlap_oracle(&g, &c);
        positives += usize::from(want);
        assert_eq!(g.check_collision(&c), want, "{g:?}");
    }
    assert!(positives > 50 && touching > 100);
}

proptest! {
    #[test]
    fn car_lane_stays_in_range(lanes in 2u32..=7, cmds in prop::collection::vec(any::<bool>(), 0..200)) {
        let c = GameConfig { lanes, ..Default::default() };
        let mut g = GameState::new(&c).unwrap();
        for right in cmds {
            let d = if right { Direction::Right } else { Direction::Left };
            g.apply_command(&CommandEvent::press(d, 0), &c);
            g.tick(&c);
            prop_assert!(g.car_lane < lanes);
        }
    }

    #[test]
    fn scores_monotone_and_obstacles_accounted(seed in any::<u64>(), cmds in prop::collection::vec(0u8..4, 1500)) {
        let c = GameConfig { rng_seed: seed, spawn_period_ticks: 30, ..Default::default() };
        let mut g = GameState::new(&c).unwrap();
        let mut best = 0;
        for cmd in cmds {
            match cmd {
                0 => g.apply_command(&CommandEvent::press(Direction::Left, 0), &c),
                1 => g.apply_command(&CommandEvent::press(Direction::Right, 0), &c),
                _ => {}
            }
            let before = g.clone();
            g.tick(&c);
            prop_assert!(g.best_score >= best);
            best = g.best_score;
            if !before.status.is_running() {
                continue;
            }
            prop_assert!(g.score >= before.score);
            if !g.status.is_running() {
                // the crasher is never also counted
                prop_assert!(g.score <= g.best_score);
                prop_assert_eq!(g.score, before.score);
                let crashers: Vec<&Obstacle> = g.obstacles.iter()
                    .filter(|o| o.lane == g.car_lane && o.y < c.car_y + c.car_height && c.car_y < o.y + c.obstacle_height)
                    .collect();
                prop_assert!(!crashers.is_empty());
                prop_assert!(crashers.iter().all(|o| !o.passed));
                continue;
            }
            // every obstacle that stops being uncounted adds exactly one point,
            // including ones that leave the track on this tick
            let was_uncounted = |id: u64| before.obstacles.iter().any(|b| b.id == id && !b.passed);
            let newly_passed = g.obstacles.iter().filter(|o| o.passed && was_uncounted(o.id)).count();
            let left_uncounted = before.obstacles.iter()
                .filter(|b| !b.passed && !g.obstacles.iter().any(|o| o.id == b.id))
                .count();
            prop_assert_eq!((g.score - before.score) as usize, newly_passed + left_uncounted);
            let ids: Vec<u64> = g.obstacles.iter().map(|o| o.id).collect();
            let mut sorted = ids.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(ids, sorted);
        }
    }
}
