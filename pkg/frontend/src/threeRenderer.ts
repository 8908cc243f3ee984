/**
 * three.js adapter: draws the SceneDescription. Browser-only; all state
 * lives in the view model, so this layer can be torn down and rebuilt at
 * any time without losing anything.
 */

import * as THREE from "three";

import { SceneDescription, OrientedFrame } from "./sceneState.js";
import { Quat, Vec3 } from "./protocol.js";

const BADGE_COLORS = { red: "#d33", yellow: "#fb3", green: "#2b4" } as const;
const GLYPH_TEXT = { cross: "✕", check: "✓", none: "" } as const;

function vec(v: Vec3): THREE.Vector3 {
  return new THREE.Vector3(v[0], v[1], v[2]);
}

function quat(q: Quat): THREE.Quaternion {
  return new THREE.Quaternion(q[1], q[2], q[3], q[0]); // wire is scalar-first
}

export class ThreeRenderer {
  readonly scene = new THREE.Scene();
  readonly camera: THREE.PerspectiveCamera;
  private readonly renderer: THREE.WebGLRenderer;
  private readonly dynamic = new THREE.Group();
  private readonly inset = new THREE.Group();
  private readonly banner: HTMLElement;
  private readonly badgeBar: HTMLElement;
  private readonly phaseLabel: HTMLElement;

  constructor(canvas: HTMLCanvasElement, overlay: HTMLElement) {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.renderer.setSize(canvas.clientWidth, canvas.clientHeight, false);
    this.camera = new THREE.PerspectiveCamera(
      50, canvas.clientWidth / canvas.clientHeight, 0.01, 100);
    this.camera.position.set(2.5, -2.5, 2.0);
    this.camera.up.set(0, 0, 1);
    this.camera.lookAt(1, 0, 0.4);

    this.scene.background = new THREE.Color("#161a1e");
    this.scene.add(new THREE.AmbientLight(0xffffff, 0.7));
    const sun = new THREE.DirectionalLight(0xffffff, 1.2);
    sun.position.set(3, -2, 5);
    this.scene.add(sun);
    this.scene.add(new THREE.GridHelper(6, 12).rotateX(Math.PI / 2));
    this.scene.add(this.dynamic);
    this.inset.position.set(1.6, 1.2, 1.2);
    this.scene.add(this.inset);

    this.banner = document.createElement("div");
    this.banner.className = "banner";
    this.badgeBar = document.createElement("div");
    this.badgeBar.className = "badges";
    this.phaseLabel = document.createElement("div");
    this.phaseLabel.className = "phase";
    overlay.append(this.phaseLabel, this.banner, this.badgeBar);
  }

  render(description: SceneDescription): void {
    this.dynamic.clear();
    this.inset.clear();
    for (const object of description.objects) {
      const mesh = this.buildObject(object.kind, object.params);
      if (mesh) this.dynamic.add(mesh);
    }
    for (const frame of description.toolpathFrames) {
      this.dynamic.add(this.buildFrame(frame));
    }
    if (description.templateOverlay) {
      for (const line of description.templateOverlay) {
        this.dynamic.add(this.buildPolyline(line, "#6cf"));
      }
    }
    if (description.highlight) {
      const marker = this.buildHighlight("#fd5");
      marker.position.copy(vec(description.highlight.pos));
      marker.quaternion.copy(quat(description.highlight.quat));
      this.dynamic.add(marker);
    }
    if (description.inset) {
      const miniature = this.buildHighlight("#f80");
      miniature.position.copy(vec(description.inset.highlight.pos)
        .multiplyScalar(description.inset.scale));
      miniature.scale.setScalar(description.inset.scale);
      this.inset.add(new THREE.AxesHelper(0.2), miniature);
    }

    this.phaseLabel.textContent = description.phase;
    this.banner.textContent = description.banner;
    this.badgeBar.replaceChildren(...description.badges.map((badge) => {
      const el = document.createElement("span");
      el.className = "badge";
      el.style.background = BADGE_COLORS[badge.color];
      el.textContent = `${GLYPH_TEXT[badge.glyph]} ${badge.subject} ${badge.message}`;
      return el;
    }));

    this.renderer.render(this.scene, this.camera);
  }

  private material(color: string, opacity = 1): THREE.MeshStandardMaterial {
    return new THREE.MeshStandardMaterial({
      color, transparent: opacity < 1, opacity, side: THREE.DoubleSide,
    });
  }

  private buildObject(kind: string, params: Record<string, unknown>):
      THREE.Object3D | null {
    if (kind === "point") {
      const mesh = new THREE.Mesh(new THREE.SphereGeometry(0.012, 16, 12),
                                  this.material("#e55"));
      mesh.position.copy(vec(params["position"] as Vec3));
      return mesh;
    }
    if (kind === "circle") {
      const radius = params["radius"] as number;
      const ring = new THREE.Mesh(
        new THREE.TorusGeometry(radius, 0.004, 8, 64),
        this.material("#5af"));
      ring.position.copy(vec(params["center"] as Vec3));
      ring.quaternion.copy(new THREE.Quaternion().setFromUnitVectors(
        new THREE.Vector3(0, 0, 1), vec(params["normal"] as Vec3)));
      return ring;
    }
    if (kind === "cylinder") {
      const c0 = params["c0"] as { center: Vec3; radius: number };
      const c1 = params["c1"] as { center: Vec3; radius: number };
      const a = vec(c0.center);
      const b = vec(c1.center);
      const length = a.distanceTo(b);
      const mesh = new THREE.Mesh(
        new THREE.CylinderGeometry(c1.radius, c0.radius, length,
                                   (params["tessellation"] as number) ?? 48,
                                   1, true),
        this.material("#9b7", 0.45));
      mesh.position.copy(a.clone().add(b).multiplyScalar(0.5));
      mesh.quaternion.copy(new THREE.Quaternion().setFromUnitVectors(
        new THREE.Vector3(0, 1, 0),
        b.clone().sub(a).normalize()));
      return mesh;
    }
    if (kind === "rect" || kind === "surface") {
      const halfU = params["half_u"] as number;
      const halfV = params["half_v"] as number;
      const mesh = new THREE.Mesh(new THREE.PlaneGeometry(2 * halfU, 2 * halfV),
                                  this.material("#fa6", 0.5));
      mesh.position.copy(vec(params["center"] as Vec3));
      const m = new THREE.Matrix4().makeBasis(
        vec(params["axis_u"] as Vec3),
        vec(params["axis_v"] as Vec3),
        vec(params["axis_u"] as Vec3).cross(vec(params["axis_v"] as Vec3)));
      mesh.quaternion.setFromRotationMatrix(m);
      return mesh;
    }
    if (kind === "halflog") {
      const radius = params["radius"] as number;
      const length = params["length"] as number;
      const mesh = new THREE.Mesh(
        new THREE.CylinderGeometry(radius, radius, length, 32, 1, false,
                                   0, Math.PI),
        this.material("#a87", 0.5));
      const base = vec(params["base_point"] as Vec3);
      const axis = vec(params["axis"] as Vec3);
      mesh.position.copy(base.clone().add(axis.clone().multiplyScalar(length / 2)));
      mesh.quaternion.copy(new THREE.Quaternion().setFromUnitVectors(
        new THREE.Vector3(0, 1, 0), axis));
      return mesh;
    }
    if (kind === "cut") {
      const group = new THREE.Group();
      const rects = params["rects"] as Array<Record<string, unknown>> ?? [];
      for (const rect of rects) {
        const sub = this.buildObject("rect", rect);
        if (sub) group.add(sub);
      }
      return group;
    }
    return null;
  }

  private buildHighlight(color: string): THREE.Object3D {
    const group = new THREE.Group();
    const core = new THREE.Mesh(new THREE.SphereGeometry(0.03, 16, 12),
                                this.material(color));
    const halo = new THREE.Mesh(new THREE.TorusGeometry(0.06, 0.006, 8, 48),
                                this.material(color, 0.7));
    group.add(core, halo);
    return group;
  }

  private buildFrame(frame: OrientedFrame): THREE.Object3D {
    const axes = new THREE.AxesHelper(frame.kind === "cut" ? 0.12 : 0.08);
    axes.position.copy(vec(frame.pos));
    axes.quaternion.copy(quat(frame.quat));
    return axes;
  }

  private buildPolyline(points: Vec3[], color: string): THREE.Object3D {
    if (points.length === 1) {
      const dot = new THREE.Mesh(new THREE.SphereGeometry(0.008, 12, 8),
                                 this.material(color));
      dot.position.copy(vec(points[0]!));
      return dot;
    }
    const geometry = new THREE.BufferGeometry().setFromPoints(
      points.map((p) => vec(p)));
    return new THREE.LineLoop(geometry,
                              new THREE.LineBasicMaterial({ color }));
  }
}
