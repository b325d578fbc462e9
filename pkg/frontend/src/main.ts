import { ApiClient } from "./api.js";
import { AdjudicationFlow } from "./adjudication.js";
import { AgreementDashboard } from "./dashboard.js";
import { LabelFlow, type LabelFlowState } from "./labeling.js";
import type { Disagreement, Guideline, KappaRow } from "./types.js";

const params = new URLSearchParams(window.location.search);
const BASE_URL = params.get("service") ?? "";
const api = new ApiClient(BASE_URL);

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function clear(node: HTMLElement): HTMLElement {
  node.replaceChildren();
  return node;
}

// ------------------------------------------------------------------ labeling

function renderGuideline(panel: HTMLElement, guideline: Guideline): void {
  clear(panel);
  const body = el("div", { class: "guideline-body" });
  body.append(el("p", {}, guideline.decision_rule));
  const degreeList = el("ul", {});
  for (const d of guideline.degrees) {
    degreeList.append(el("li", {}, `${d.degree} — ${d.name}: ${d.description}`));
  }
  body.append(degreeList);
  body.append(el("p", {}, "Near-paraphrase categories:"));
  const catList = el("ul", {});
  for (const cat of guideline.near_paraphrase_categories) {
    catList.append(
      el(
        "li",
        {},
        `${cat.id}. ${cat.name}: ${cat.description}`,
        el("br"),
        el("span", { class: "example" }, `«${cat.example.sentence_1}» / «${cat.example.sentence_2}»`),
      ),
    );
  }
  body.append(catList, el("p", {}, guideline.notes));

  const toggle = el("button", { class: "guideline-toggle" }, "Guideline ▾");
  let open = true; // visible by default for new annotators
  toggle.addEventListener("click", () => {
    open = !open;
    body.style.display = open ? "" : "none";
    toggle.textContent = open ? "Guideline ▾" : "Guideline ▸";
  });
  panel.append(el("h2", {}, guideline.title), toggle, body);
}

function renderLabeling(root: HTMLElement, flow: LabelFlow): void {
  const render = (state: LabelFlowState) => {
    clear(root);
    if (state.status === "loading" || state.status === "idle") {
      root.append(el("p", { class: "muted" }, "Loading next pair…"));
      return;
    }
    if (state.status === "empty") {
      root.append(el("p", { class: "done" }, "Queue empty — no pairs left to annotate."));
      return;
    }
    if (state.error !== null) {
      const banner = el("div", { class: "banner error" }, state.error, " ");
      const retry = el("button", {}, "Retry");
      retry.addEventListener("click", () => void flow.retry());
      banner.append(retry);
      root.append(banner);
      if (state.status === "error") return;
    }
    const task = state.task;
    if (task === null) return;
    root.append(
      el("div", { class: "pair" },
        el("p", { class: "sentence", lang: "hy" }, task.sentence_1),
        el("p", { class: "sentence", lang: "hy" }, task.sentence_2),
      ),
    );
    const degrees = el("div", { class: "degrees" });
    for (let d = 0; d <= 5; d++) {
      const button = el(
        "button",
        { class: state.degree === d ? "degree selected" : "degree" },
        String(d),
      );
      button.addEventListener("click", () => flow.selectDegree(d));
      degrees.append(button);
    }
    root.append(degrees);

    const near = el("input", { type: "checkbox", id: "near-flag" }) as HTMLInputElement;
    near.checked = state.nearParaphrase;
    near.disabled = !flow.nearToggleEnabled;
    near.addEventListener("change", () => flow.toggleNearParaphrase());
    root.append(
      el("label", { for: "near-flag", class: near.disabled ? "muted" : "" }, near, " near-paraphrase"),
    );

    const submit = el("button", { class: "submit" }, "Submit") as HTMLButtonElement;
    submit.disabled = !flow.submitEnabled;
    submit.addEventListener("click", () => void flow.submit());
    root.append(submit);
  };
  flow.onChange(render);
  render(flow.getState());
}

// -------------------------------------------------------------- adjudication

function renderAdjudication(root: HTMLElement, flow: AdjudicationFlow): void {
  const render = () => {
    const state = flow.getState();
    clear(root);
    if (state.error !== null) {
      root.append(el("div", { class: "banner error" }, state.error));
    }
    if (state.status === "loading") {
      root.append(el("p", { class: "muted" }, "Loading disagreements…"));
      return;
    }
    if (state.items.length === 0) {
      root.append(el("p", { class: "done" }, "No open disagreements."));
      return;
    }
    for (const item of state.items) {
      root.append(renderConflict(item, flow));
    }
  };
  flow.onChange(render);
  render();
}

function renderConflict(item: Disagreement, flow: AdjudicationFlow): HTMLElement {
  const card = el("div", { class: "conflict" },
    el("p", { class: "sentence", lang: "hy" }, item.sentence_1),
    el("p", { class: "sentence", lang: "hy" }, item.sentence_2),
  );
  const judgments = el("div", { class: "judgments" });
  for (const j of item.judgments) {
    judgments.append(
      el("span", { class: `judgment ${j.label}` }, `${j.annotator_id}: degree ${j.sts_degree} → ${j.label}`),
    );
  }
  card.append(judgments);
  const controls = el("div", { class: "controls" });
  const near = el("input", { type: "checkbox" }) as HTMLInputElement;
  for (const label of ["paraphrase", "non_paraphrase"] as const) {
    const button = el("button", {}, `final: ${label}`);
    button.addEventListener("click", () =>
      void flow.resolve(item.pair_id, label, label === "non_paraphrase" && near.checked),
    );
    controls.append(button);
  }
  controls.append(el("label", {}, near, " near-paraphrase"));
  card.append(controls);
  return card;
}

// ------------------------------------------------------------------ dashboard

function renderDashboard(root: HTMLElement, dashboard: AgreementDashboard): void {
  const render = () => {
    const state = dashboard.getState();
    clear(root);
    const refresh = el("button", {}, "Refresh");
    refresh.addEventListener("click", () => void dashboard.refresh());
    root.append(refresh);
    if (state.error !== null) {
      root.append(el("div", { class: "banner error" }, state.error));
      return;
    }
    if (state.rows.length === 0) {
      root.append(el("p", { class: "muted" }, "No co-annotated pairs yet."));
      return;
    }
    const table = el("table", { class: "kappa" });
    table.append(
      el("tr", {},
        ...["annotators", "items", "observed", "expected", "kappa"].map((h) => el("th", {}, h)),
      ),
    );
    for (const row of state.rows) {
      table.append(
        el("tr", {},
          el("td", {}, `${row.annotator_a} / ${row.annotator_b}`),
          el("td", {}, String(row.n_items)),
          el("td", {}, row.observed_agreement.toFixed(2)),
          el("td", {}, row.expected_agreement.toFixed(2)),
          el("td", {}, row.kappa.toFixed(2)),
        ),
      );
    }
    root.append(table);
  };
  dashboard.onChange(render);
  render();
}

// ----------------------------------------------------------------- bootstrap

function mount(): void {
  const annotatorId = params.get("annotator") ?? "";
  const views = {
    label: document.getElementById("view-label")!,
    adjudicate: document.getElementById("view-adjudicate")!,
    agreement: document.getElementById("view-agreement")!,
  };
  const show = (name: keyof typeof views) => {
    for (const [key, node] of Object.entries(views)) {
      (node as HTMLElement).style.display = key === name ? "" : "none";
    }
  };
  document.getElementById("tab-label")!.addEventListener("click", () => show("label"));
  document.getElementById("tab-adjudicate")!.addEventListener("click", () => show("adjudicate"));
  document.getElementById("tab-agreement")!.addEventListener("click", () => show("agreement"));

  if (!annotatorId) {
    views.label.append(el("p", { class: "banner error" }, "Pass ?annotator=<id> in the URL."));
  } else {
    const flow = new LabelFlow(api, annotatorId);
    renderLabeling(document.getElementById("label-root")!, flow);
    void api.guideline().then((g) => renderGuideline(document.getElementById("guideline")!, g));
    void flow.loadNext();
    // Keyboard shortcuts: 0-5 pick a degree, n toggles the flag, Enter submits.
    document.addEventListener("keydown", (event) => {
      if (event.target instanceof HTMLInputElement) return;
      if (event.key >= "0" && event.key <= "5") flow.selectDegree(Number(event.key));
      else if (event.key === "n") flow.toggleNearParaphrase();
      else if (event.key === "Enter" && flow.submitEnabled) void flow.submit();
    });

    const adjudication = new AdjudicationFlow(api, annotatorId);
    renderAdjudication(document.getElementById("adjudicate-root")!, adjudication);
    void adjudication.refresh();
  }

  const dashboard = new AgreementDashboard(api);
  renderDashboard(document.getElementById("agreement-root")!, dashboard);
  void dashboard.refresh();
  show("label");
}

mount();
