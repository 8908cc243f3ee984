/**
 * Session client: handshake, event sending, update dispatch, resync.
 *
 * The client records every input event it sends. The server folds events
 * deterministically, so when the view model reports a revision gap the
 * client reconnects and re-sends the recording — the fresh session
 * reproduces the identical scene.
 */

import {
  AckMessage,
  InputEvent,
  parseAck,
  parseUpdate,
  ProtocolError,
  SceneUpdate,
  helloMessage,
  serializeEvent,
} from "./protocol.js";
import { ViewModel } from "./viewModel.js";

/** Minimal duplex text socket; adapters wrap browser WebSocket or ws. */
export interface WireSocket {
  send(data: string): void;
  close(): void;
  onMessage(handler: (data: string) => void): void;
  onClose(handler: () => void): void;
}

export type SocketFactory = (url: string) => Promise<WireSocket>;

export interface SessionClientOptions {
  url: string;
  workflow?: string;
  connect: SocketFactory;
  onUpdate?: (update: SceneUpdate) => void;
}

export class SessionClient {
  readonly viewModel = new ViewModel();
  private readonly options: SessionClientOptions;
  private socket: WireSocket | null = null;
  private ack: AckMessage | null = null;
  private sent: InputEvent[] = [];
  private resyncing = false;
  private resyncCount = 0;

  constructor(options: SessionClientOptions) {
    this.options = options;
    this.viewModel.onResyncNeeded(() => {
      void this.resync();
    });
  }

  get sessionId(): string | null {
    return this.ack?.session ?? null;
  }

  get resyncs(): number {
    return this.resyncCount;
  }

  get sentEvents(): readonly InputEvent[] {
    return this.sent;
  }

  async open(): Promise<AckMessage> {
    const socket = await this.options.connect(this.options.url);
    const ack = await new Promise<AckMessage>((resolve, reject) => {
      socket.onMessage((data) => {
        try {
          resolve(parseAck(data));
        } catch (err) {
          reject(err);
        }
      });
      socket.send(helloMessage(this.options.workflow));
    });
    socket.onMessage((data) => this.receive(data));
    socket.onClose(() => {
      this.socket = null;
    });
    this.socket = socket;
    this.ack = ack;
    return ack;
  }

  private receive(data: string): void {
    let update: SceneUpdate;
    try {
      update = parseUpdate(data);
    } catch (err) {
      if (err instanceof ProtocolError) return; // not a scene update
      throw err;
    }
    this.viewModel.apply(update);
    this.options.onUpdate?.(update);
  }

  send(event: InputEvent): void {
    if (!this.socket) throw new Error("session is not open");
    this.sent.push(event);
    this.socket.send(serializeEvent(event));
  }

  /** Rebuild the scene in a fresh session by replaying the recording. */
  async resync(): Promise<void> {
    if (this.resyncing) return;
    this.resyncing = true;
    this.resyncCount += 1;
    try {
      this.socket?.close();
      this.socket = null;
      this.viewModel.reset();
      await this.open();
      for (const event of this.sent) {
        this.socket!.send(serializeEvent(event));
      }
    } finally {
      this.resyncing = false;
    }
  }

  close(): void {
    this.socket?.close();
    this.socket = null;
  }
}

/** Adapter for the browser's native WebSocket. */
export function browserSocketFactory(): SocketFactory {
  return (url: string) =>
    new Promise<WireSocket>((resolve, reject) => {
      const ws = new WebSocket(url);
      const messageHandlers: Array<(data: string) => void> = [];
      const closeHandlers: Array<() => void> = [];
      ws.onmessage = (ev) => {
        const latest = messageHandlers[messageHandlers.length - 1];
        latest?.(typeof ev.data === "string" ? ev.data : "");
      };
      ws.onclose = () => closeHandlers.forEach((h) => h());
      ws.onerror = () => reject(new Error(`cannot connect to ${url}`));
      ws.onopen = () =>
        resolve({
          send: (data) => ws.send(data),
          close: () => ws.close(),
          onMessage: (h) => messageHandlers.push(h),
          onClose: (h) => closeHandlers.push(h),
        });
    });
}
