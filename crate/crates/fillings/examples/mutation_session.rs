//! Drive a mutation session without HTTP: mutate, inspect, undo.

use fillings::app::session::{SessionRequest, SessionStore};

fn main() -> fillings::Result<()> {
    let store = SessionStore::new();
    let snap = store.create(&SessionRequest { braid: "s1^4".into(), samples: None, seed: None })?;
    println!("{} {} A = {:?}", snap.id, snap.fingerprint, snap.values.a[0]);
    for v in [0, 1, 0] {
        let s = store.with(&snap.id, |s| {
            s.mutate(v)?;
            Ok(s.snapshot())
        })?;
        println!("mutate {v}: {} A = {:?}", s.fingerprint, s.values.a[0]);
    }
    let s = store.with(&snap.id, |s| {
        s.undo()?;
        Ok(s.snapshot())
    })?;
    println!("undo:     {} history {:?}", s.fingerprint, s.history);
    Ok(())
}
