from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='BenchmarkRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('dims', models.CharField(help_text='Comma separated cycle lengths', max_length=100)),
                ('mode', models.CharField(choices=[('row', 'Representative row'), ('full-rep', 'Full row without reflection reuse')], default='row', max_length=10)),
                ('n', models.PositiveIntegerField()),
                ('t', models.PositiveSmallIntegerField()),
                ('entries_computed', models.PositiveIntegerField()),
                ('nanos_total', models.BigIntegerField()),
                ('nanos_per_entry', models.FloatField()),
                ('oracle_nanos_per_entry', models.FloatField(blank=True, null=True)),
                ('threads', models.PositiveSmallIntegerField(default=1)),
                ('repeat', models.PositiveSmallIntegerField(default=1)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('suite', models.CharField(choices=[('all', 'All suites'), ('cycle', 'Cycle closed form'), ('galpha', "Generalized cycle Green's function"), ('torus', 'Two-dimensional torus'), ('ttorus', 't-dimensional torus'), ('product', 'Product formulas'), ('walk', 'Hitting times'), ('identities', 'Fourier identities'), ('relations', 'Defining relations')], max_length=20)),
                ('attempted', models.PositiveIntegerField(default=0)),
                ('passed', models.PositiveIntegerField(default=0)),
                ('max_residual', models.FloatField(default=0.0)),
                ('max_size', models.PositiveIntegerField(blank=True, null=True)),
                ('tolerance', models.FloatField(blank=True, help_text='Override passed with --tol, if any', null=True)),
                ('wall_seconds', models.FloatField(default=0.0)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
    ]
