//! Interactive mutation sessions.  A session is its braid, sampling
//! parameters and mutation history; every snapshot is recomputed by
//! replaying the history from the initial seed.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use crate::braid::BraidWord;
use crate::cluster::{digest, explore, mutate_seed, Seed, DEFAULT_BUDGET, DEFAULT_SAMPLES};
use crate::weave::{compile_braid_weave, StringSeg, WeaveGeometry};
use crate::{Error, Result};

pub const DEFAULT_RNG_SEED: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionRequest {
    pub braid: String,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub id: String,
    pub braid: BraidWord,
    pub rng_seed: u64,
    initial: Seed,
    current: Seed,
    history: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub epsilon: Vec<Vec<i64>>,
    pub frozen: Vec<bool>,
    pub strings: Vec<StringSeg>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Values {
    /// `a[s][v]`: cluster variable at vertex `v`, sample `s`.
    pub a: Vec<Vec<String>>,
    /// `x[s][v]`: the matching `X`-variable.
    pub x: Vec<Vec<String>>,
}

/// How the values of a session were sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedParams {
    pub rng: u64,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub schema: String,
    pub id: String,
    pub braid: String,
    pub seed: SeedParams,
    pub n: usize,
    pub history: Vec<usize>,
    pub fingerprint: String,
    pub quiver: Quiver,
    pub values: Values,
}

impl Session {
    pub fn new(id: String, req: &SessionRequest) -> Result<Self> {
        let braid = BraidWord::parse(&req.braid)?;
        let samples = req.samples.unwrap_or(DEFAULT_SAMPLES);
        if !(1..=8).contains(&samples) {
            return Err(Error::OutOfRange(format!("samples = {samples}, need 1..=8")));
        }
        let rng_seed = req.seed.unwrap_or(DEFAULT_RNG_SEED);
        let initial = Seed::from_braid(&braid, samples, rng_seed)?;
        Ok(Session { id, braid, rng_seed, current: initial.clone(), initial, history: Vec::new() })
    }

    pub fn mutate(&mut self, vertex: usize) -> Result<()> {
        self.current = mutate_seed(&self.current, vertex)?;
        self.history.push(vertex);
        Ok(())
    }

    /// Drops the last mutation; a no-op on a fresh session.
    pub fn undo(&mut self) -> Result<()> {
        if self.history.pop().is_some() {
            self.current = self.replay(&self.history)?;
        }
        Ok(())
    }

    pub fn replay(&self, word: &[usize]) -> Result<Seed> {
        word.iter().try_fold(self.initial.clone(), |s, &k| mutate_seed(&s, k))
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn seed(&self) -> &Seed {
        &self.current
    }

    pub fn snapshot(&self) -> Snapshot {
        snapshot_of(&self.id, &self.braid, &self.current, self.rng_seed)
    }

    pub fn exchange(&self, depth: usize) -> Result<serde_json::Value> {
        explore(&self.current, DEFAULT_BUDGET, Some(depth)).map(|g| g.to_json())
    }

    pub fn weave_geometry(&self) -> WeaveGeometry {
        compile_braid_weave(&self.braid).geometry()
    }
}

pub fn snapshot_of(id: &str, braid: &BraidWord, seed: &Seed, rng_seed: u64) -> Snapshot {
    let strings = crate::weave::StringDiagram::new(braid).strings;
    let show = |rows: Vec<Vec<crate::Q>>| rows.into_iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    let x_by_vertex: Vec<Vec<crate::Q>> = (0..seed.len()).map(|v| seed.x_from_a(v)).collect();
    let x = (0..seed.sample_count()).map(|s| x_by_vertex.iter().map(|xv| xv[s].clone()).collect()).collect();
    Snapshot {
        schema: "session.v1".into(),
        id: id.to_string(),
        braid: braid.to_string(),
        seed: SeedParams { rng: rng_seed, samples: seed.sample_count() },
        n: braid.strands(),
        history: seed.history.clone(),
        fingerprint: digest(&seed.fingerprint()),
        quiver: Quiver { epsilon: seed.epsilon.clone(), frozen: seed.frozen.clone(), strings },
        values: Values { a: show(seed.samples.clone()), x: show(x) },
    }
}

/// All live sessions.  Each session has its own lock; the map lock is held
/// only to look sessions up or insert them.
#[derive(Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    counter: AtomicU64,
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn create(&self, req: &SessionRequest) -> Result<Snapshot> {
        let k = self.counter.fetch_add(1, Ordering::Relaxed);
        let id = format!("s{k:x}-{:08x}", rand::random::<u32>());
        let session = Session::new(id.clone(), req)?;
        let snap = session.snapshot();
        self.sessions.write().expect("session map lock").insert(id, Arc::new(Mutex::new(session)));
        Ok(snap)
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>> {
        self.sessions
            .read()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| Error::UnknownSession(id.to_string()))
    }

    pub fn with<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> Result<T>) -> Result<T> {
        let s = self.get(id)?;
        let mut guard = s.lock().expect("session lock");
        f(&mut guard)
    }
}
