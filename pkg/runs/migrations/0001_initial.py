from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.AutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('oid', models.CharField(blank=True, db_index=True, default='', max_length=30, null=True, verbose_name='Object ID')),
                ('last_changed_on', models.DateTimeField(auto_now=True, null=True)),
                ('subcommand', models.CharField(choices=[('verify-theorem', 'Locality theorem checks'), ('epr', 'Simulated EPR experiment'), ('swap', 'Entanglement swapping scenario'), ('density', 'Free packet density validation'), ('disturbance', 'Disturbance sweep'), ('chsh-scan', 'CHSH settings grid scan')], max_length=20)),
                ('master_seed', models.BigIntegerField()),
                ('config_echo', models.TextField()),
                ('summary', models.TextField(blank=True, default='')),
                ('exit_code', models.SmallIntegerField(choices=[(0, 'Success'), (1, 'Invariant failed')], default=0)),
                ('output_dir', models.CharField(max_length=500)),
                ('created', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'abstract': False,
            },
        ),
    ]
