//! Restart policies: LBD-average triggered restarts and Luby-sequence restarts.
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RestartMode {
    /// Restart when recent learnt clauses have a high LBD compared with all of them.
    Glucose,
    /// Restart after `luby(i) * unit` conflicts.
    Luby,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestartConfig {
    pub mode: RestartMode,
    /// Capacity of the recent-LBD window.
    pub window: usize,
    /// Multiplier applied to the window average before comparing with the global average.
    pub k: f64,
    pub luby_unit: u64,
}

impl Default for RestartConfig {
    fn default() -> Self {
        RestartConfig {
            mode: RestartMode::Glucose,
            window: 50,
            k: 0.8,
            luby_unit: 100,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RestartState {
    cfg: RestartConfig,
    window: VecDeque<u32>,
    window_sum: u64,
    global_sum: u64,
    global_count: u64,
    conflicts_since_restart: u64,
    luby_index: u64,
}

impl RestartState {
    pub fn new(cfg: RestartConfig) -> RestartState {
        assert!(cfg.window > 0, "restart window must be positive");
        assert!(cfg.luby_unit > 0, "luby unit must be positive");
        RestartState {
            window: VecDeque::with_capacity(cfg.window),
            cfg,
            window_sum: 0,
            global_sum: 0,
            global_count: 0,
            conflicts_since_restart: 0,
            luby_index: 1,
        }
    }

    pub fn config(&self) -> &RestartConfig {
        &self.cfg
    }

    /// Record the LBD of a new learnt clause (one per conflict).
    pub fn on_learnt(&mut self, lbd: u32) {
        if self.window.len() == self.cfg.window {
            let old = self.window.pop_front().expect("full window");
            self.window_sum -= old as u64;
        }
        self.window.push_back(lbd);
        self.window_sum += lbd as u64;
        self.global_sum += lbd as u64;
        self.global_count += 1;
        self.conflicts_since_restart += 1;
    }

    pub fn should_restart(&self) -> bool {
        match self.cfg.mode {
            RestartMode::Glucose => {
                if self.window.len() < self.cfg.window {
                    return false;
                }
                let recent = self.window_sum as f64 / self.cfg.window as f64;
                let global = self.global_sum as f64 / self.global_count as f64;
                recent * self.cfg.k > global
            }
            RestartMode::Luby => {
                self.conflicts_since_restart >= luby(self.luby_index) * self.cfg.luby_unit
            }
        }
    }

    /// Reset per-restart state. Global averages are kept.
    pub fn on_restart(&mut self) {
        self.window.clear();
        self.window_sum = 0;
        self.conflicts_since_restart = 0;
        if self.cfg.mode == RestartMode::Luby {
            self.luby_index += 1;
        }
    }

    pub fn window_sum(&self) -> u64 {
        self.window_sum
    }

    pub fn window_len(&self) -> usize {
        self.window.len()
    }

    pub fn window_contents(&self) -> impl Iterator<Item = u32> + '_ {
        self.window.iter().copied()
    }

    pub fn global_sum(&self) -> u64 {
        self.global_sum
    }

    pub fn global_count(&self) -> u64 {
        self.global_count
    }

    pub fn conflicts_since_restart(&self) -> u64 {
        self.conflicts_since_restart
    }
}

/// The `i`-th element (1-based) of the Luby sequence 1,1,2,1,1,2,4,1,1,2,...
pub fn luby(i: u64) -> u64 {
    assert!(i >= 1, "the Luby sequence is 1-based");
    let mut i = i;
    loop {
        // smallest k with 2^k - 1 >= i
        let mut k = 1u32;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if (1u64 << k) - 1 == i {
            return 1u64 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}
