/**
 * DOM rendering for the advisor. All numbers shown here are taken
 * verbatim from model state, which in turn mirrors API responses.
 */

import { PartitionColor, ROLE_LABELS, Role } from "./api.js";
import {
  formatPercent,
  formatScore,
  hasOwnRatingComponent,
  roleWeightText,
  swatchTextColor,
} from "./format.js";
import { AdvisorModel } from "./model.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

const ALL_ROLES: Role[] = ["dress_costume", "up_down", "shoes_bags", "accessory"];

export class AdvisorView {
  constructor(
    private model: AdvisorModel,
    private root: HTMLElement,
  ) {
    model.onChange(() => this.render());
  }

  render(): void {
    this.root.replaceChildren(
      this.identityPanel(),
      this.scorePanel(),
      this.lookPanel(),
      this.ratingPanel(),
      this.suggestionPanel(),
      this.palettePanel(),
    );
  }

  private identityPanel(): HTMLElement {
    const panel = el("section", { class: "panel identity" });
    panel.append(el("h2", {}, "Who is rating"));
    const status = this.model.isGuest
      ? "Browsing as a guest: scores show pure color harmony."
      : `Signed in as ${this.model.userId}.`;
    panel.append(el("p", {}, status));

    const input = el("input", {
      type: "text",
      placeholder: "user id",
      id: "user-id-input",
    });
    const signIn = el("button", {}, "Sign in");
    signIn.onclick = () => {
      if (input.value.trim()) {
        void this.model.signIn(input.value.trim());
      }
    };
    const guest = el("button", {}, "Continue as guest");
    guest.onclick = () => this.model.signOut();
    panel.append(input, signIn, guest);
    return panel;
  }

  private scorePanel(): HTMLElement {
    const panel = el("section", { class: "panel score" });
    panel.append(el("h2", {}, "Predicted preference"));
    const score = this.model.score;
    if (this.model.look.length === 0) {
      panel.append(el("p", {}, "Add items to the look to see a score."));
      return panel;
    }
    if (this.model.scorePending || score === null) {
      panel.append(el("p", { class: "pending" }, "scoring..."));
      return panel;
    }
    const value = el("div", { class: "score-value", id: "score-value" },
                     formatScore(score.value));
    panel.append(value);

    const parts = el("ul", { class: "components" });
    const harmony = el("li", { id: "harmony-component" },
                       `Harmony: ${formatScore(score.components.harmony)}`);
    parts.append(harmony);
    if (hasOwnRatingComponent(score)) {
      parts.append(el("li", { id: "scp-component" },
                      `Your colors: ${formatScore(score.components.weighted_scp!)}`));
    }
    panel.append(parts);
    if (score.matched_palette_id !== null) {
      panel.append(el("p", { class: "matched" },
                      `Closest palette: ${score.matched_palette_id}`));
    }
    if (this.model.lastError) {
      panel.append(el("p", { class: "error" }, this.model.lastError));
    }
    return panel;
  }

  private lookPanel(): HTMLElement {
    const panel = el("section", { class: "panel look" });
    panel.append(el("h2", {}, "Look builder"));

    const list = el("ul", { class: "look-items" });
    this.model.look.forEach((item, index) => {
      const row = el("li", {});
      row.append(el("span", { class: "role" },
                    `${ROLE_LABELS[item.role]} (${roleWeightText(item.role)}) `));
      row.append(el("span", { class: "label" }, item.label));
      if (item.colorId !== undefined) {
        const color = this.model.colorById(item.colorId);
        if (color) {
          const chip = el("span", { class: "chip" });
          chip.style.background = color.hex;
          row.append(chip);
        }
      }
      const remove = el("button", { class: "remove" }, "remove");
      remove.onclick = () => this.model.removeItem(index);
      row.append(remove);
      list.append(row);
    });
    panel.append(list);

    const roleSelect = el("select", { id: "role-select" });
    for (const role of ALL_ROLES) {
      roleSelect.append(el("option", { value: role }, ROLE_LABELS[role]));
    }
    const colorSelect = el("select", { id: "color-select" });
    for (const color of this.model.colors) {
      colorSelect.append(el("option", { value: String(color.id) }, color.name));
    }
    const addColor = el("button", {}, "Add color item");
    addColor.onclick = () => {
      this.model.addColorItem(roleSelect.value as Role, Number(colorSelect.value));
    };

    const upload = el("input", { type: "file", accept: "image/png,image/jpeg" });
    upload.onchange = () => {
      const file = upload.files?.[0];
      if (file) {
        void this.model.addImageItem(roleSelect.value as Role, file, file.name);
      }
    };

    const clear = el("button", {}, "Clear look");
    clear.onclick = () => this.model.clearLook();

    panel.append(roleSelect, colorSelect, addColor, upload, clear);
    return panel;
  }

  private ratingPanel(): HTMLElement {
    const panel = el("section", { class: "panel ratings" });
    panel.append(el("h2", {}, "Single color ratings"));
    if (this.model.isGuest) {
      panel.append(el("p", {}, "Sign in to rate colors."));
      return panel;
    }
    const grid = el("div", { class: "swatch-grid" });
    for (const color of this.model.colors) {
      grid.append(this.swatch(color));
    }
    panel.append(grid);
    return panel;
  }

  private swatch(color: PartitionColor): HTMLElement {
    const cell = el("div", { class: "swatch", "data-color-id": String(color.id) });
    cell.style.background = color.hex;
    cell.style.color = swatchTextColor(color.rgb);
    cell.title = color.name;
    cell.append(el("div", { class: "swatch-name" }, color.name));

    const slider = el("input", {
      type: "range",
      min: "0",
      max: "1",
      step: "0.1",
      value: String(this.model.ratings.get(color.id) ?? 0.5),
    });
    slider.onchange = () => {
      void this.model.setRating(color.id, Number(slider.value));
    };
    const current = this.model.ratings.get(color.id);
    cell.append(slider, el("div", { class: "swatch-rating" },
                           current === undefined ? "unrated" : current.toFixed(1)));
    return cell;
  }

  private suggestionPanel(): HTMLElement {
    const panel = el("section", { class: "panel suggestions" });
    panel.append(el("h2", {}, "Suggestions"));
    const refresh = el("button", {}, "Rank catalog against this look");
    refresh.onclick = () => void this.model.loadSuggestions();
    panel.append(refresh);

    const list = el("ol", { class: "ranked" });
    for (const entry of this.model.suggestions) {
      const row = el("li", {});
      row.append(el("span", {}, `${entry.item.name} (${ROLE_LABELS[entry.item.role]}) `));
      row.append(el("strong", {}, formatScore(entry.score.value)));
      list.append(row);
    }
    panel.append(list);
    return panel;
  }

  private palettePanel(): HTMLElement {
    const panel = el("section", { class: "panel palettes" });
    panel.append(el("h2", {}, "Mined palettes"));

    const label = el("input", { type: "text", placeholder: "style label filter" });
    const load = el("button", {}, "Browse");
    load.onclick = () => void this.model.loadPalettes(label.value.trim() || undefined);
    panel.append(label, load);

    const list = el("div", { class: "palette-list" });
    for (const palette of this.model.palettes) {
      const row = el("div", { class: "palette" });
      row.append(el("span", { class: "palette-id" },
                    `#${palette.id}${palette.label ? ` (${palette.label})` : ""} `));
      for (const entry of palette.entries) {
        const color = this.model.colorById(entry.id);
        const chip = el("span", { class: "chip" });
        chip.style.background = color ? color.hex : "#888";
        chip.title = `${color ? color.name : entry.id}: ${formatPercent(entry.w)}`;
        chip.style.width = `${Math.max(12, Math.round(entry.w * 120))}px`;
        row.append(chip);
      }
      row.append(el("span", { class: "members" }, ` ${palette.member_count} looks`));
      list.append(row);
    }
    panel.append(list);
    return panel;
  }
}
