//! Fixed-timestep lane dodging simulation.
//!
//! The track is normalized: `y = 0` is the top of the screen and grows
//! downward. Obstacles spawn just above the top edge and fall; the car sits in
//! a fixed vertical band and hops one lane per `Press` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::filter::{CommandEvent, Direction, EventKind};

/// Upper bound on the difficulty multiplier.
pub const SPEED_GROWTH_CAP: f64 = 3.0;
/// Score points per difficulty step.
pub const SCORE_PER_SPEED_STEP: u32 = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GameConfig {
    pub lanes: u32,
    pub tick_hz: u32,
    pub spawn_period_ticks: u32,
    pub base_speed: f64,
    pub speed_growth: f64,
    pub car_y: f64,
    pub car_height: f64,
    pub obstacle_height: f64,
    pub auto_restart_delay_ticks: u32,
    pub rng_seed: u64,
}

impl Default for GameConfig {
    fn default() -> Self {
        Self {
            lanes: 3,
            tick_hz: 60,
            spawn_period_ticks: 90,
            base_speed: 0.007,
            speed_growth: 1.05,
            car_y: 0.85,
            car_height: 0.10,
            obstacle_height: 0.10,
            auto_restart_delay_ticks: 120,
            rng_seed: 0,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("invalid game config: {0}")]
pub struct InvalidConfig(pub String);

impl GameConfig {
    pub fn validate(&self) -> Result<(), InvalidConfig> {
        let fail = |m: String| Err(InvalidConfig(m));
        if !(2..=7).contains(&self.lanes) {
            return fail(format!("lanes must be in 2..=7, got {}", self.lanes));
        }
        if self.tick_hz == 0 || self.tick_hz > 1000 {
            return fail(format!("tick_hz must be in 1..=1000, got {}", self.tick_hz));
        }
        if self.spawn_period_ticks == 0 {
            return fail("spawn_period_ticks must be positive".into());
        }
        let positive = [
            ("base_speed", self.base_speed),
            ("speed_growth", self.speed_growth),
            ("car_height", self.car_height),
            ("obstacle_height", self.obstacle_height),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return fail(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.car_y >= 0.0 && self.car_y + self.car_height <= 1.0) {
            return fail(format!(
                "car band [{}, {}] must lie within the track",
                self.car_y,
                self.car_y + self.car_height
            ));
        }
        Ok(())
    }

    /// Obstacle descent per tick at the given score.
    pub fn speed_at(&self, score: u32) -> f64 {
        let steps = (score / SCORE_PER_SPEED_STEP) as i32;
        self.base_speed * self.speed_growth.powi(steps).min(SPEED_GROWTH_CAP)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Obstacle {
    pub id: u64,
    pub lane: u32,
    /// Top edge.
    pub y: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Running,
    Crashed { ticks_remaining: u32 },
}

impl RunStatus {
    pub fn is_running(self) -> bool {
        matches!(self, RunStatus::Running)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameState {
    /// Ticks since the current run started.
    pub tick: u64,
    pub status: RunStatus,
    pub car_lane: u32,
    pub obstacles: Vec<Obstacle>,
    pub score: u32,
    pub best_score: u32,
    pub next_obstacle_id: u64,
    pub rng: ChaCha8Rng,
}

impl GameState {
    pub fn new(cfg: &GameConfig) -> Result<Self, InvalidConfig> {
        cfg.validate()?;
        Ok(Self::fresh_run(cfg, 0, ChaCha8Rng::seed_from_u64(cfg.rng_seed)))
    }

    fn fresh_run(cfg: &GameConfig, best_score: u32, rng: ChaCha8Rng) -> Self {
        Self {
            tick: 0,
            status: RunStatus::Running,
            car_lane: cfg.lanes / 2,
            obstacles: Vec::new(),
            score: 0,
            best_score,
            next_obstacle_id: 0,
            rng,
        }
    }

    pub fn apply_command(&mut self, ev: &CommandEvent, cfg: &GameConfig) {
        if ev.kind != EventKind::Press || !self.status.is_running() {
            return;
        }
        self.car_lane = match ev.direction {
            Direction::Left => self.car_lane.saturating_sub(1),
            Direction::Right => (self.car_lane + 1).min(cfg.lanes - 1),
        };
    }

    /// True iff an obstacle in the car's lane overlaps the car band by a
    /// positive amount. Touching edges do not count.
    pub fn check_collision(&self, cfg: &GameConfig) -> bool {
        let car_top = cfg.car_y;
        let car_bottom = cfg.car_y + cfg.car_height;
        self.obstacles
            .iter()
            .any(|o| o.lane == self.car_lane && o.y < car_bottom && car_top < o.y + cfg.obstacle_height)
    }

    pub fn tick(&mut self, cfg: &GameConfig) {
        match self.status {
            RunStatus::Crashed { ticks_remaining } => {
                if ticks_remaining <= 1 {
                    let rng = self.rng.clone();
                    *self = Self::fresh_run(cfg, self.best_score, rng);
                } else {
                    self.status = RunStatus::Crashed { ticks_remaining: ticks_remaining - 1 };
                    self.tick += 1;
                }
            }
            RunStatus::Running => self.tick_running(cfg),
        }
    }

    fn tick_running(&mut self, cfg: &GameConfig) {
        let speed = cfg.speed_at(self.score);
        for o in &mut self.obstacles {
            o.y += speed;
        }
        self.tick += 1;

        if self.check_collision(cfg) {
            self.best_score = self.best_score.max(self.score);
            self.status = RunStatus::Crashed { ticks_remaining: cfg.auto_restart_delay_ticks };
            return;
        }

        let car_bottom = cfg.car_y + cfg.car_height;
        for o in &mut self.obstacles {
            if !o.passed && o.y > car_bottom {
                o.passed = true;
                self.score += 1;
            }
        }
        self.best_score = self.best_score.max(self.score);
        self.obstacles.retain(|o| o.y <= 1.0);

        if self.tick.is_multiple_of(u64::from(cfg.spawn_period_ticks)) {
            let lane = self.rng.random_range(0..cfg.lanes);
            self.obstacles.push(Obstacle { id: self.next_obstacle_id, lane, y: -cfg.obstacle_height, passed: false });
            self.next_obstacle_id += 1;
        }
    }

    /// Ticks left before auto-restart, zero while running.
    pub fn restart_in(&self) -> u32 {
        match self.status {
            RunStatus::Running => 0,
            RunStatus::Crashed { ticks_remaining } => ticks_remaining,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> GameConfig {
        GameConfig { rng_seed: 7, ..Default::default() }
    }

    fn press(d: Direction) -> CommandEvent {
        CommandEvent::press(d, 0)
    }

    #[test]
    fn new_game_centers_car() {
        let g = GameState::new(&cfg()).unwrap();
        assert_eq!((g.tick, g.car_lane, g.score), (0, 1, 0));
        assert!(g.obstacles.is_empty());
        let two = GameConfig { lanes: 2, ..cfg() };
        assert_eq!(GameState::new(&two).unwrap().car_lane, 1);
        assert_eq!(GameState::new(&cfg()).unwrap(), GameState::new(&cfg()).unwrap());
    }

    #[test]
    fn invalid_configs_rejected() {
        for bad in [
            GameConfig { lanes: 1, ..cfg() },
            GameConfig { lanes: 8, ..cfg() },
            GameConfig { tick_hz: 0, ..cfg() },
            GameConfig { spawn_period_ticks: 0, ..cfg() },
            GameConfig { base_speed: 0.0, ..cfg() },
            GameConfig { car_y: 0.95, ..cfg() },
        ] {
            assert!(GameState::new(&bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn commands_move_and_clamp() {
        let c = cfg();
        let mut g = GameState::new(&c).unwrap();
        g.apply_command(&press(Direction::Left), &c);
        assert_eq!(g.car_lane, 0);
        g.apply_command(&press(Direction::Left), &c);
        assert_eq!(g.car_lane, 0);
        let before = g.clone();
        g.apply_command(&CommandEvent::release(Direction::Right, 0), &c);
        assert_eq!(g, before);
        for _ in 0..5 {
            g.apply_command(&press(Direction::Right), &c);
        }
        assert_eq!(g.car_lane, 2);
        g.status = RunStatus::Crashed { ticks_remaining: 3 };
        g.apply_command(&press(Direction::Left), &c);
        assert_eq!(g.car_lane, 2);
    }

    #[test]
    fn obstacles_fall_by_speed() {
        let c = cfg();
        let mut g = GameState::new(&c).unwrap();
        g.obstacles.push(Obstacle { id: 0, lane: 0, y: 0.10, passed: false });
        g.next_obstacle_id = 1;
        g.tick(&c);
        assert!((g.obstacles[0].y - 0.107).abs() < 1e-15);
    }

    #[test]
    fn collision_rules() {
        let c = cfg();
        let mut g = GameState::new(&c).unwrap();
        g.obstacles.push(Obstacle { id: 0, lane: g.car_lane, y: c.car_y, passed: false });
        assert!(g.check_collision(&c));
        g.obstacles[0].lane = 0;
        assert!(!g.check_collision(&c));
        g.obstacles[0].lane = g.car_lane;
        g.obstacles[0].y = c.car_y - c.obstacle_height;
        assert!(!g.check_collision(&c));
        g.obstacles[0].y = c.car_y + c.car_height;
        assert!(!g.check_collision(&c));
    }

    #[test]
    fn crash_then_auto_restart() {
        let c = cfg();
        let mut g = GameState::new(&c).unwrap();
        g.score = 4;
        g.obstacles.push(Obstacle { id: 0, lane: g.car_lane, y: c.car_y - 0.05, passed: false });
        g.tick(&c);
        assert_eq!(g.status, RunStatus::Crashed { ticks_remaining: 120 });
        assert_eq!(g.best_score, 4);
        for _ in 0..119 {
            g.tick(&c);
            assert!(!g.status.is_running());
        }
        assert_eq!(g.restart_in(), 1);
        g.tick(&c);
        assert_eq!(g.status, RunStatus::Running);
        assert_eq!((g.score, g.best_score, g.tick), (0, 4, 0));
        assert!(g.obstacles.is_empty());
    }

    #[test]
    fn zero_delay_restarts_next_tick() {
        let c = GameConfig { auto_restart_delay_ticks: 0, ..cfg() };
        let mut g = GameState::new(&c).unwrap();
        g.obstacles.push(Obstacle { id: 0, lane: g.car_lane, y: c.car_y, passed: false });
        g.tick(&c);
        assert_eq!(g.status, RunStatus::Crashed { ticks_remaining: 0 });
        g.tick(&c);
        assert_eq!(g.status, RunStatus::Running);
    }

    #[test]
    fn passing_obstacle_scores_once() {
        let c = cfg();
        let mut g = GameState::new(&c).unwrap();
        g.obstacles.push(Obstacle { id: 0, lane: 0, y: 0.946, passed: false });
        g.next_obstacle_id = 1;
        g.tick(&c);
        assert_eq!(g.score, 1);
        assert!(g.obstacles[0].passed);
        g.tick(&c);
        assert_eq!(g.score, 1);
        for _ in 0..10 {
            g.tick(&c);
        }
        assert!(g.obstacles.iter().all(|o| o.id != 0));
    }

    #[test]
    fn spawns_on_period() {
        let c = cfg();
        let mut g = GameState::new(&c).unwrap();
        for _ in 0..89 {
            g.tick(&c);
        }
        assert!(g.obstacles.is_empty());
        g.tick(&c);
        assert_eq!(g.obstacles.len(), 1);
        assert_eq!(g.obstacles[0].y, -c.obstacle_height);
        assert!(g.obstacles[0].lane < c.lanes);
    }

    #[test]
    fn speed_ramp_is_capped() {
        let c = cfg();
        assert_eq!(c.speed_at(9), c.base_speed);
        assert!((c.speed_at(10) - c.base_speed * 1.05).abs() < 1e-15);
        assert!((c.speed_at(10_000) - c.base_speed * 3.0).abs() < 1e-15);
    }
}
