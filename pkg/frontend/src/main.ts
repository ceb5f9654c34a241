import { PersqApi } from "./api.js";
import { WhatIfApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "http://127.0.0.1:8000";
const userId = params.get("user") ?? "u01";
const date = params.get("date") ?? new Date().toISOString().slice(0, 10);

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app container");

const app = new WhatIfApp(root, new PersqApi(baseUrl), userId, date);
void app.loadBaseline();
