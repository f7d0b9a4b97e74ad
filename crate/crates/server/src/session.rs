//! One game session served over a websocket.
//!
//! The simulation loop owns the engine and ticks on a fixed clock. Client
//! connections only decode frames and push them down an ordered channel; the
//! loop drains that channel at each tick boundary. Snapshots go out through a
//! broadcast channel, so a slow client loses the oldest snapshots instead of
//! stalling the loop.

use std::fs::File;
use std::future::Future;
use std::io::{self, BufWriter, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Duration;

use fingersteer_core::{
    decode_frame, ConfigError, Engine, LandmarkFrame, SessionConfig, Snapshot, TickOutput, TraceLine,
};
use futures_util::{SinkExt, StreamExt};
use thiserror::Error;
use tokio::net::{TcpListener, TcpStream};
use tokio::sync::{broadcast, mpsc};
use tokio::time::{sleep_until, Instant};
use tokio_tungstenite::tungstenite::protocol::frame::coding::CloseCode;
use tokio_tungstenite::tungstenite::protocol::CloseFrame;
use tokio_tungstenite::tungstenite::Message;

/// Snapshots buffered per client before the oldest are dropped.
const SNAPSHOT_BACKLOG: usize = 64;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot bind {addr}: {source}")]
    BindFailure { addr: String, source: io::Error },
    #[error("cannot write trace {path}: {source}")]
    TraceIo { path: PathBuf, source: io::Error },
    #[error("client sent {count} consecutive malformed lines")]
    ProtocolViolation { count: u32 },
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct SessionStats {
    pub ticks: u64,
    /// Ticks that started more than one full period after their deadline.
    pub missed_ticks: u64,
    pub max_lateness: Duration,
    pub frames: u64,
    pub malformed_lines: u64,
    pub refused_clients: u64,
}

/// Owns the engine and the optional trace writer; one call to [`SimLoop::tick`]
/// per clock tick. Usable without any networking.
pub struct SimLoop<W: Write> {
    engine: Engine,
    out: TickOutput,
    trace: Option<W>,
}

impl<W: Write> SimLoop<W> {
    /// Writes the header and the tick-0 snapshot to `trace` if present.
    pub fn new(cfg: &SessionConfig, mut trace: Option<W>) -> Result<Self, SessionError> {
        let engine = Engine::new(cfg)?.with_tick_stamping();
        if let Some(w) = trace.as_mut() {
            let header = TraceLine::Header(Box::new(engine.header()));
            write_lines(w, [&header, &engine.initial_line()]).map_err(trace_err(cfg))?;
        }
        Ok(Self { engine, out: TickOutput::default(), trace })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn initial_snapshot(&self) -> Snapshot {
        self.engine.snapshot()
    }

    /// Queues `frames` (already in arrival order) and advances one tick.
    pub fn tick(&mut self, frames: impl IntoIterator<Item = LandmarkFrame>) -> io::Result<Option<Snapshot>> {
        for f in frames {
            self.engine.enqueue(f);
        }
        self.out.clear();
        self.engine.step_tick(&mut self.out);
        if let Some(w) = self.trace.as_mut() {
            write_lines(w, &self.out.lines)?;
        }
        Ok(self.out.snapshot.take())
    }

    /// Flushes and returns the trace writer.
    pub fn finish(mut self) -> io::Result<Option<W>> {
        if let Some(w) = self.trace.as_mut() {
            w.flush()?;
        }
        Ok(self.trace)
    }
}

fn write_lines<'a, W: Write>(w: &mut W, lines: impl IntoIterator<Item = &'a TraceLine>) -> io::Result<()> {
    for line in lines {
        w.write_all(line.to_line().as_bytes())?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

fn trace_err(cfg: &SessionConfig) -> impl Fn(io::Error) -> SessionError + '_ {
    move |source| SessionError::TraceIo { path: cfg.trace_out.clone().unwrap_or_default(), source }
}

/// Nanosecond offset of tick `k` from the loop start.
fn tick_offset(k: u64, tick_hz: u32) -> Duration {
    Duration::from_nanos((u128::from(k) * 1_000_000_000 / u128::from(tick_hz)) as u64)
}

#[derive(Default)]
struct Counters {
    frames: AtomicU64,
    malformed: AtomicU64,
    refused: AtomicU64,
}

/// A bound, not yet running session.
pub struct Session {
    cfg: SessionConfig,
    listener: TcpListener,
}

impl Session {
    pub async fn bind(cfg: SessionConfig) -> Result<Self, SessionError> {
        cfg.validate()?;
        let listener = TcpListener::bind(&cfg.listen_address)
            .await
            .map_err(|source| SessionError::BindFailure { addr: cfg.listen_address.clone(), source })?;
        Ok(Self { cfg, listener })
    }

    pub fn local_addr(&self) -> io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    /// Runs until the client disconnects or `shutdown` resolves. Without
    /// `headless`, ticking starts when the first client connects.
    pub async fn run(self, shutdown: impl Future<Output = ()>) -> Result<SessionStats, SessionError> {
        let cfg = self.cfg;
        let trace = match &cfg.trace_out {
            Some(path) => Some(BufWriter::new(File::create(path).map_err(trace_err(&cfg))?)),
            None => None,
        };
        let mut sim = SimLoop::new(&cfg, trace)?;

        let (frame_tx, mut frame_rx) = mpsc::unbounded_channel::<LandmarkFrame>();
        let (snap_tx, _) = broadcast::channel::<Arc<str>>(SNAPSHOT_BACKLOG);
        let (end_tx, mut end_rx) = mpsc::unbounded_channel::<Result<(), SessionError>>();
        let (started_tx, mut started_rx) = mpsc::unbounded_channel::<()>();
        let counters = Arc::new(Counters::default());

        let acceptor = tokio::spawn(accept_loop(
            self.listener,
            ClientCtx {
                frames: frame_tx,
                snapshots: snap_tx.clone(),
                ended: end_tx,
                started: started_tx,
                counters: counters.clone(),
                max_malformed: cfg.max_consecutive_malformed,
            },
        ));

        tokio::pin!(shutdown);
        let mut stats = SessionStats::default();
        let mut outcome = Ok(());

        let ready = cfg.headless || {
            tokio::select! {
                _ = &mut shutdown => false,
                s = started_rx.recv() => s.is_some(),
            }
        };

        if ready {
            let hz = cfg.game.tick_hz;
            let period = tick_offset(1, hz);
            let start = Instant::now();
            let mut batch = Vec::new();
            loop {
                let deadline = start + tick_offset(stats.ticks + 1, hz);
                let ended = tokio::select! {
                    biased;
                    _ = &mut shutdown => true,
                    r = end_rx.recv() => {
                        outcome = r.unwrap_or(Ok(()));
                        true
                    }
                    _ = sleep_until(deadline) => false,
                };
                if ended {
                    // frames sent before the disconnect still get their tick
                    if !frame_rx.is_empty() {
                        while let Ok(f) = frame_rx.try_recv() {
                            batch.push(f);
                        }
                        sim.tick(batch.drain(..)).map_err(trace_err(&cfg))?;
                        stats.ticks += 1;
                    }
                    break;
                }
                let lateness = Instant::now().saturating_duration_since(deadline);
                stats.max_lateness = stats.max_lateness.max(lateness);
                if lateness > period {
                    stats.missed_ticks += 1;
                }
                while let Ok(f) = frame_rx.try_recv() {
                    batch.push(f);
                }
                let snap = sim.tick(batch.drain(..)).map_err(trace_err(&cfg))?;
                stats.ticks += 1;
                if let Some(s) = snap {
                    let _ = snap_tx.send(s.to_line().into());
                }
            }
        }

        acceptor.abort();
        sim.finish().map_err(trace_err(&cfg))?;
        stats.frames = counters.frames.load(Ordering::Relaxed);
        stats.malformed_lines = counters.malformed.load(Ordering::Relaxed);
        stats.refused_clients = counters.refused.load(Ordering::Relaxed);
        tracing::info!(?stats, "session ended");
        outcome.map(|()| stats)
    }
}

/// Binds `cfg.listen_address` and runs until disconnect or Ctrl-C.
pub async fn run_session(cfg: SessionConfig) -> Result<SessionStats, SessionError> {
    let session = Session::bind(cfg).await?;
    if let Ok(addr) = session.local_addr() {
        tracing::info!(%addr, "listening");
    }
    session
        .run(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

#[derive(Clone)]
struct ClientCtx {
    frames: mpsc::UnboundedSender<LandmarkFrame>,
    snapshots: broadcast::Sender<Arc<str>>,
    ended: mpsc::UnboundedSender<Result<(), SessionError>>,
    started: mpsc::UnboundedSender<()>,
    counters: Arc<Counters>,
    max_malformed: u32,
}

async fn accept_loop(listener: TcpListener, ctx: ClientCtx) {
    let busy = Arc::new(AtomicBool::new(false));
    loop {
        let (stream, peer) = match listener.accept().await {
            Ok(c) => c,
            Err(e) => {
                tracing::warn!("accept failed: {e}");
                continue;
            }
        };
        if busy.swap(true, Ordering::SeqCst) {
            ctx.counters.refused.fetch_add(1, Ordering::Relaxed);
            tokio::spawn(refuse(stream, peer));
            continue;
        }
        let ctx = ctx.clone();
        let busy = busy.clone();
        tokio::spawn(async move {
            match serve_client(stream, &ctx).await {
                Ok(res) => {
                    let _ = ctx.ended.send(res);
                }
                Err(e) => {
                    // handshake never completed; the slot is free again
                    tracing::warn!(%peer, "handshake failed: {e}");
                    busy.store(false, Ordering::SeqCst);
                }
            }
        });
    }
}

async fn refuse(stream: TcpStream, peer: SocketAddr) {
    tracing::info!(%peer, "refusing second client");
    if let Ok(mut ws) = tokio_tungstenite::accept_async(stream).await {
        let frame = CloseFrame { code: CloseCode::Policy, reason: "session already has a client".into() };
        let _ = ws.close(Some(frame)).await;
    }
}

/// Err means the websocket handshake failed; Ok carries how the session ended.
async fn serve_client(
    stream: TcpStream,
    ctx: &ClientCtx,
) -> Result<Result<(), SessionError>, tokio_tungstenite::tungstenite::Error> {
    let ws = tokio_tungstenite::accept_async(stream).await?;
    let (mut sink, mut source) = ws.split();
    let mut snaps = ctx.snapshots.subscribe();
    let _ = ctx.started.send(());

    let (stop_tx, mut stop_rx) = tokio::sync::oneshot::channel::<()>();
    let writer = tokio::spawn(async move {
        loop {
            let next = tokio::select! {
                _ = &mut stop_rx => break,
                n = snaps.recv() => n,
            };
            match next {
                Ok(line) => {
                    if sink.send(Message::text(&*line)).await.is_err() {
                        break;
                    }
                }
                Err(broadcast::error::RecvError::Lagged(n)) => tracing::debug!("client lagging, dropped {n} snapshots"),
                Err(broadcast::error::RecvError::Closed) => break,
            }
        }
        sink
    });

    let mut consecutive = 0u32;
    let mut result = Ok(());
    'read: while let Some(msg) = source.next().await {
        let text = match msg {
            Ok(Message::Text(t)) => t,
            Ok(Message::Binary(_)) => {
                consecutive += 1;
                ctx.counters.malformed.fetch_add(1, Ordering::Relaxed);
                if consecutive >= ctx.max_malformed {
                    result = Err(SessionError::ProtocolViolation { count: consecutive });
                    break;
                }
                continue;
            }
            Ok(Message::Close(_)) | Err(_) => break,
            Ok(_) => continue,
        };
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            match decode_frame(line) {
                Ok(frame) => {
                    consecutive = 0;
                    ctx.counters.frames.fetch_add(1, Ordering::Relaxed);
                    let _ = ctx.frames.send(frame);
                }
                Err(e) => {
                    consecutive += 1;
                    ctx.counters.malformed.fetch_add(1, Ordering::Relaxed);
                    tracing::debug!("malformed line: {e}");
                    if consecutive >= ctx.max_malformed {
                        result = Err(SessionError::ProtocolViolation { count: consecutive });
                        break 'read;
                    }
                }
            }
        }
    }

    let _ = stop_tx.send(());
    if let Ok(mut sink) = writer.await {
        let _ = sink.close().await;
    }
    Ok(result)
}
