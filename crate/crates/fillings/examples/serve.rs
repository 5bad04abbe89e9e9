//! The session service on a local port.
//!
//!     cargo run --example serve -- 8080
//!     curl -s -XPOST localhost:8080/session -d '{"braid":"(s1 s2)^3"}' -H 'content-type: application/json'

fn main() -> fillings::Result<()> {
    let port = std::env::args().nth(1).map_or(8080, |p| p.parse().expect("port"));
    println!("listening on 127.0.0.1:{port}");
    tokio::runtime::Runtime::new()?.block_on(fillings::app::server::serve(port))
}
