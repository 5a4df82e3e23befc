use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;

use crate::clock::SystemClock;
use crate::problem::{ProblemError, ProblemRequest, ProblemView};
use crate::store::{Store, StoreError, SubmissionFilter};
use crate::verdict::Status;

pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";
pub const DEFAULT_DATA_DIR: &str = "david-data";

#[derive(Clone)]
pub struct AppState {
    pub store: Arc<Store>,
    pub instructor_token: Arc<str>,
}

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("missing or invalid instructor token")]
    Auth,
    #[error("{0}")]
    BadRequest(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    SelfCheck(String),
    #[error("unknown problem \"{0}\"")]
    UnknownProblem(String),
    #[error("{0}")]
    Internal(String),
}

impl ApiError {
    fn parts(&self) -> (StatusCode, &'static str) {
        match self {
            ApiError::Auth => (StatusCode::UNAUTHORIZED, "auth"),
            ApiError::BadRequest(_) => (StatusCode::BAD_REQUEST, "badRequest"),
            ApiError::Validation(_) => (StatusCode::BAD_REQUEST, "validation"),
            ApiError::SelfCheck(_) => (StatusCode::UNPROCESSABLE_ENTITY, "selfCheck"),
            ApiError::UnknownProblem(_) => (StatusCode::NOT_FOUND, "unknownProblem"),
            ApiError::Internal(_) => (StatusCode::INTERNAL_SERVER_ERROR, "storage"),
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::UnknownProblem(id) => ApiError::UnknownProblem(id),
            StoreError::Problem(ProblemError::Validation(m)) => ApiError::Validation(m),
            StoreError::Problem(e @ ProblemError::SelfCheck(_)) => ApiError::SelfCheck(e.to_string()),
            other => ApiError::Internal(other.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, kind) = self.parts();
        let mut response = (status, Json(json!({ "error": kind, "message": self.to_string() }))).into_response();
        if status == StatusCode::UNAUTHORIZED {
            response
                .headers_mut()
                .insert(header::WWW_AUTHENTICATE, header::HeaderValue::from_static("Bearer"));
        }
        response
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
struct SubmitRequest {
    student_id: String,
    payload: String,
}

#[derive(Debug, Deserialize)]
struct SubmissionQuery {
    student: Option<String>,
    status: Option<String>,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/problems", get(list_problems).post(create_problem))
        .route("/api/problems/{id}", get(get_problem))
        .route("/api/problems/{id}/submissions", get(list_submissions).post(submit))
        .with_state(state)
}

fn require_instructor(state: &AppState, headers: &HeaderMap) -> Result<(), ApiError> {
    let presented = headers
        .get(header::AUTHORIZATION)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.strip_prefix("Bearer "));
    match presented {
        Some(token) if !state.instructor_token.is_empty() && token == &*state.instructor_token => Ok(()),
        _ => Err(ApiError::Auth),
    }
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(format!("request body: {e}")))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))
}

async fn health() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok" }))
}

async fn create_problem(State(state): State<AppState>, headers: HeaderMap, body: Bytes) -> Result<Response, ApiError> {
    require_instructor(&state, &headers)?;
    let request: ProblemRequest = parse_body(&body)?;
    let store = state.store.clone();
    let loaded = blocking(move || store.register(request)).await??;
    Ok((StatusCode::CREATED, Json(loaded.problem().clone())).into_response())
}

async fn list_problems(State(state): State<AppState>) -> Json<Vec<ProblemView>> {
    Json(state.store.problems().iter().map(|p| p.view()).collect())
}

async fn get_problem(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<ProblemView>, ApiError> {
    state
        .store
        .problem(&id)
        .map(|p| Json(p.view()))
        .ok_or(ApiError::UnknownProblem(id))
}

/// Responds with the record exactly as it was written to the log.
async fn submit(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> Result<Response, ApiError> {
    let request: SubmitRequest = parse_body(&body)?;
    if request.student_id.is_empty() {
        return Err(ApiError::BadRequest("studentId must not be empty".into()));
    }
    let store = state.store.clone();
    let record = blocking(move || store.submit(&id, &request.student_id, &request.payload)).await??;
    Ok(([(header::CONTENT_TYPE, "application/json")], record.to_line()).into_response())
}

async fn list_submissions(
    State(state): State<AppState>,
    headers: HeaderMap,
    Path(id): Path<String>,
    Query(query): Query<SubmissionQuery>,
) -> Result<Response, ApiError> {
    require_instructor(&state, &headers)?;
    let status = query
        .status
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Status>())
        .transpose()
        .map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let filter = SubmissionFilter {
        student_id: query.student.filter(|s| !s.is_empty()),
        status,
    };
    let records = state.store.list_submissions(&id, &filter)?;
    Ok(Json(records).into_response())
}

/// Server settings read from `DAVID_ADDR`, `DAVID_DATA_DIR` and
/// `DAVID_INSTRUCTOR_TOKEN`.
#[derive(Debug, Clone)]
pub struct Config {
    pub addr: SocketAddr,
    pub data_dir: PathBuf,
    pub instructor_token: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("DAVID_ADDR \"{0}\" is not a socket address")]
    Addr(String),
    #[error("DAVID_INSTRUCTOR_TOKEN must be set to a non-empty value")]
    MissingToken,
}

impl Config {
    pub fn from_env() -> Result<Self, ConfigError> {
        Self::from_lookup(|key| std::env::var(key).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self, ConfigError> {
        let addr_text = lookup("DAVID_ADDR").unwrap_or_else(|| DEFAULT_ADDR.to_string());
        let addr = addr_text.parse().map_err(|_| ConfigError::Addr(addr_text))?;
        let data_dir = lookup("DAVID_DATA_DIR").unwrap_or_else(|| DEFAULT_DATA_DIR.to_string()).into();
        let instructor_token = lookup("DAVID_INSTRUCTOR_TOKEN")
            .filter(|t| !t.is_empty())
            .ok_or(ConfigError::MissingToken)?;
        Ok(Config {
            addr,
            data_dir,
            instructor_token,
        })
    }
}

/// Opens the store and serves until interrupted.
pub async fn serve(config: Config) -> Result<(), Box<dyn std::error::Error + Send + Sync>> {
    let store = Store::open(&config.data_dir, Arc::new(SystemClock))?;
    let app = router(AppState {
        store: Arc::new(store),
        instructor_token: config.instructor_token.into(),
    });
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    eprintln!(
        "listening on http://{} (data in {})",
        listener.local_addr()?,
        config.data_dir.display()
    );
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
