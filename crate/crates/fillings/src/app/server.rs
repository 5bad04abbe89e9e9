//! HTTP/JSON front end for [`SessionStore`].

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use std::sync::Arc;

use super::session::{SessionRequest, SessionStore, Snapshot};
use super::{error_kind, error_report};
use crate::Error;

pub struct ApiError(Error);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match error_kind(&self.0) {
            "unknown_session" => StatusCode::NOT_FOUND,
            "budget_exceeded" => StatusCode::UNPROCESSABLE_ENTITY,
            "io" | "check_failed" => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        (status, Json(error_report(&self.0))).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Deserialize)]
struct MutateBody {
    vertex: usize,
}

#[derive(Deserialize)]
struct DepthQuery {
    depth: Option<usize>,
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/healthz", get(|| async { Json(serde_json::json!({"status": "ok"})) }))
        .route("/session", post(create))
        .route("/session/:id", get(show))
        .route("/session/:id/mutate", post(mutate))
        .route("/session/:id/undo", post(undo))
        .route("/session/:id/exchange", get(exchange))
        .route("/session/:id/weave.svgdata", get(weave))
        .with_state(store)
}

async fn create(State(store): State<Arc<SessionStore>>, Json(req): Json<SessionRequest>) -> ApiResult<Snapshot> {
    Ok(Json(store.create(&req)?))
}

async fn show(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<Snapshot> {
    Ok(Json(store.with(&id, |s| Ok(s.snapshot()))?))
}

async fn mutate(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    Json(body): Json<MutateBody>,
) -> ApiResult<Snapshot> {
    Ok(Json(store.with(&id, |s| {
        s.mutate(body.vertex)?;
        Ok(s.snapshot())
    })?))
}

async fn undo(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<Snapshot> {
    Ok(Json(store.with(&id, |s| {
        s.undo()?;
        Ok(s.snapshot())
    })?))
}

async fn exchange(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    Query(q): Query<DepthQuery>,
) -> ApiResult<serde_json::Value> {
    let depth = q.depth.unwrap_or(1);
    let session = store.get(&id)?;
    let value = tokio::task::spawn_blocking(move || session.lock().expect("session lock").exchange(depth))
        .await
        .map_err(|e| Error::Io(std::io::Error::other(e)))??;
    Ok(Json(value))
}

async fn weave(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<serde_json::Value> {
    let geometry = store.with(&id, |s| Ok(s.weave_geometry()))?;
    let mut v = serde_json::to_value(&geometry).map_err(Error::from)?;
    v["schema"] = "weave.svgdata.v1".into();
    Ok(Json(v))
}

/// Serves until the process is stopped.
pub async fn serve(port: u16) -> crate::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    axum::serve(listener, router(Arc::new(SessionStore::new()))).await?;
    Ok(())
}
