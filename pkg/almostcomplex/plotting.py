# Copyright 2026 The almostcomplex developers
#
# This file is part of almostcomplex.
#
# almostcomplex is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# any later version.
#
# almostcomplex is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with almostcomplex.  If not, see <https://www.gnu.org/licenses/>.


import matplotlib.pyplot as plt
import matplotlib.cm
import numpy as np

__all__ = ['plot_spectrum', 'plot_path_scan', 'plot_residual_history',
           'plot_form_slice']


def plot_spectrum(report):
    r"""
    Plot the computed eigenvalues of the operator P.

    Eigenvalues counted in the kernel are drawn as colored markers, the
    rest in black, on a logarithmic axis. The kernel tolerance is drawn as
    a horizontal line.

    Parameters
    ----------
    report : SpectralReport

    Returns
    -------
    lines : list
        One line object per eigenvalue followed by the tolerance line.
    """
    lines = []
    for i, value in enumerate(report.eigenvalues):
        # zero eigenvalues are clipped to stay visible on the log axis
        value = max(abs(value), 1e-16)
        if i < report.kernel_dim:
            line_i = plt.plot(i, value, 'o')
        else:
            line_i = plt.plot(i, value, 'ok')
        lines.append(line_i[0])
    lines.append(plt.axhline(report.tolerance, color='gray', ls='--'))
    plt.gca().set_yscale('log')
    plt.xlabel('index')
    plt.ylabel('eigenvalue')
    return lines


def plot_path_scan(samples):
    r"""
    Plot :math:`h^-` along a path of structures.

    Parameters
    ----------
    samples : list of PathSample

    Returns
    -------
    lines : list
        The step line of the kernel dimensions and the markers of flagged
        samples.
    """
    t = np.array([s.t for s in samples], dtype=float)
    dims = np.array([np.nan if s.kernel_dim is None else s.kernel_dim
                     for s in samples], dtype=float)
    lines = plt.step(t, dims, where='mid', marker='o')
    flagged = np.array([s.flagged for s in samples], dtype=bool)
    lines += plt.plot(t[flagged], np.nan_to_num(dims[flagged], nan=0.0),
                      'xr', ms=10)
    plt.xlabel('t')
    plt.ylabel(r'$h^-_J$')
    return lines


def plot_residual_history(*histories, labels=None):
    """
    Plot Newton residual histories on a logarithmic axis.

    Parameters
    ----------
    *histories : sequence of float or CYSolution
        residuals per iteration
    labels : {None, list of str}

    Returns
    -------
    lines : list
        A list of line objects, one per history.
    """
    mapper = matplotlib.cm.ScalarMappable(cmap='viridis')
    colors = mapper.to_rgba(np.arange(len(histories)))
    lines = []
    for i, history in enumerate(histories):
        history = getattr(history, 'residuals', history)
        label = None if labels is None else labels[i]
        line_i = plt.semilogy(np.arange(len(history)), history, 'o-',
                              color=colors[i, :], label=label)
        lines.append(line_i[0])
    plt.xlabel('iteration')
    plt.ylabel('sup norm of the residual')
    if labels is not None:
        plt.legend()
    return lines


def plot_form_slice(form, component=0, axes=(0, 1), index=0):
    """
    Show one component of a form on a coordinate plane.

    Parameters
    ----------
    form : FormField
    component : int
        component index in lexicographic order
    axes : pair of int
        grid axes spanning the plane
    index : int
        grid index of the remaining two axes

    Returns
    -------
    image : AxesImage
    """
    values = form.components[component]
    selection = [index] * 4
    for a in axes:
        selection[a] = slice(None)
    plane = values[tuple(selection)]
    if axes[0] > axes[1]:
        plane = plane.T
    image = plt.imshow(plane.T, origin='lower', cmap='viridis',
                       extent=(0, form.chart.periods[axes[0]], 0,
                               form.chart.periods[axes[1]]))
    plt.colorbar(image)
    plt.xlabel(f'x{axes[0] + 1}')
    plt.ylabel(f'x{axes[1] + 1}')
    return image
