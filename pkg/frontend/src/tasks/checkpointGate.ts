// Checkpoint enforcement for the interactive-video task. The gate owns the
// rule "the video halts at each checkpoint until it is answered": playback
// pauses when a checkpoint's timestamp is reached (snapping onto it, so the
// halt lands within the player tolerance), and seeking past an unanswered
// checkpoint snaps back to it. Kept free of DOM rendering so it can drive
// any video-element-like object.

export interface CheckpointSpec {
  id: number;
  at_ms: number;
}

export interface VideoLike {
  currentTime: number; // seconds
  paused: boolean;
  play(): unknown;
  pause(): void;
}

export const CHECKPOINT_TOLERANCE_MS = 250;

export class CheckpointGate {
  private answers = new Map<number, number>();
  private halted: CheckpointSpec | null = null;

  constructor(
    private video: VideoLike,
    private checkpoints: CheckpointSpec[],
    private onHalt: (checkpoint: CheckpointSpec) => void,
  ) {
    this.checkpoints = [...checkpoints].sort((a, b) => a.at_ms - b.at_ms);
  }

  get haltedAt(): CheckpointSpec | null {
    return this.halted;
  }

  answeredOption(checkpointId: number): number | undefined {
    return this.answers.get(checkpointId);
  }

  /** Answers for submission, in checkpoint id order; null where unanswered. */
  collectAnswers(): (number | null)[] {
    return [...this.checkpoints]
      .sort((a, b) => a.id - b.id)
      .map((cp) => this.answers.get(cp.id) ?? null);
  }

  private nextUnanswered(): CheckpointSpec | null {
    for (const cp of this.checkpoints) {
      if (!this.answers.has(cp.id)) return cp;
    }
    return null;
  }

  private haltAt(checkpoint: CheckpointSpec): void {
    this.halted = checkpoint;
    this.video.currentTime = checkpoint.at_ms / 1000;
    this.video.pause();
    this.onHalt(checkpoint);
  }

  /** Wire to the video's `timeupdate` event. */
  handleTimeUpdate(): void {
    if (this.halted) return;
    const positionMs = this.video.currentTime * 1000;
    const next = this.nextUnanswered();
    if (next && positionMs >= next.at_ms - CHECKPOINT_TOLERANCE_MS) {
      this.haltAt(next);
    }
  }

  /** Wire to the video's `seeking` event: no skipping past open checkpoints. */
  handleSeeking(): void {
    const positionMs = this.video.currentTime * 1000;
    if (this.halted) {
      // already gated: just keep the playhead on the checkpoint
      if (positionMs > this.halted.at_ms) {
        this.video.currentTime = this.halted.at_ms / 1000;
      }
      return;
    }
    const next = this.nextUnanswered();
    if (next && positionMs > next.at_ms) {
      this.haltAt(next);
    }
  }

  /** Record the learner's choice for the halted checkpoint and resume. */
  answer(checkpointId: number, optionId: number): void {
    this.answers.set(checkpointId, optionId);
    if (this.halted?.id === checkpointId) {
      this.halted = null;
      this.video.play();
    }
  }

  get allAnswered(): boolean {
    return this.nextUnanswered() === null;
  }
}
