/**
 * Boot. The only configuration is the API base URL: `?api=<url>` wins,
 * otherwise the dashboard talks to its own origin.
 */

import { ApiClient } from './api.js';
import { App } from './app.js';

const params = new URLSearchParams(window.location.search);
const base = params.get('api') ?? window.location.origin;

const root = document.getElementById('app');
if (!root) throw new Error('missing #app mount point');

const app = new App(root, new ApiClient(base));
void app.route();
